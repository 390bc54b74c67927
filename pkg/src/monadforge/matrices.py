"""Dense exact matrices with canonical elimination.

The solvers here are deliberately boring: reduced row echelon form with
first-nonzero pivoting, so that ranks, kernels and affine solution spaces are
canonical (independent of input row order) and bitwise reproducible.  All
arithmetic goes through the field tag; there is no floating point anywhere.

Also provides the standard symplectic form Q_std, exact symplectic framing of
a nondegenerate skew form (Gram-Schmidt in pairs), and Cayley transforms that
turn skew / Hamiltonian matrices into exact orthogonal / symplectic ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .fields import QQ, MixedFieldError, same_field


class ShapeError(ValueError):
    """Operand shapes do not fit the requested operation."""


class SingularMatrixError(ValueError):
    """A matrix required to be invertible is not."""


class DegenerateFormError(ValueError):
    """A skew form required to be nondegenerate has a radical."""


class Matrix:
    """Immutable dense matrix over a tagged scalar field."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, rows: Sequence[Sequence]):
        rows = tuple(tuple(field.of(x) for x in row) for row in rows)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ShapeError("ragged rows")
        else:
            width = 0
        self.field = field
        self.nrows = len(rows)
        self.ncols = width
        self.rows = rows

    # ---------------------------------------------------------------- builders

    @staticmethod
    def zeros(field, nrows: int, ncols: int) -> "Matrix":
        z = field.zero()
        return Matrix(field, [[z] * ncols for _ in range(nrows)])

    @staticmethod
    def identity(field, n: int) -> "Matrix":
        z, o = field.zero(), field.one()
        return Matrix(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def column(field, entries: Sequence) -> "Matrix":
        return Matrix(field, [[x] for x in entries])

    @staticmethod
    def row_vector(field, entries: Sequence) -> "Matrix":
        return Matrix(field, [list(entries)])

    @staticmethod
    def diagonal(field, entries: Sequence) -> "Matrix":
        n = len(entries)
        z = field.zero()
        return Matrix(field, [[entries[i] if i == j else z for j in range(n)]
                              for i in range(n)])

    # ---------------------------------------------------------------- access

    def __getitem__(self, key):
        i, j = key
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def submatrix(self, row_idx: Iterable[int], col_idx: Iterable[int]) -> "Matrix":
        col_idx = tuple(col_idx)
        return Matrix(self.field,
                      [[self.rows[i][j] for j in col_idx] for i in row_idx])

    def block(self, r0: int, c0: int, nrows: int, ncols: int) -> "Matrix":
        return Matrix(self.field,
                      [row[c0:c0 + ncols] for row in self.rows[r0:r0 + nrows]])

    # ---------------------------------------------------------------- algebra

    def _binary_check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        same_field(self.field, other.field)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._binary_check(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ShapeError("addition shape mismatch")
        add = self.field.add
        return Matrix(self.field,
                      [[add(a, b) for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._binary_check(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ShapeError("subtraction shape mismatch")
        sub = self.field.sub
        return Matrix(self.field,
                      [[sub(a, b) for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        return Matrix(self.field, [[neg(a) for a in row] for row in self.rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._binary_check(other)
        if self.ncols != other.nrows:
            raise ShapeError(
                f"product shape mismatch {self.nrows}x{self.ncols} @ "
                f"{other.nrows}x{other.ncols}")
        f = self.field
        add, mul, zero = f.add, f.mul, f.zero()
        cols = list(zip(*other.rows)) if other.rows else []
        out = []
        for row in self.rows:
            out_row = []
            for col in cols:
                acc = zero
                for a, b in zip(row, col):
                    if a and b:
                        acc = add(acc, mul(a, b))
                out_row.append(acc)
            out.append(out_row)
        return Matrix(f, out)

    def scale(self, scalar) -> "Matrix":
        s = self.field.of(scalar)
        mul = self.field.mul
        return Matrix(self.field, [[mul(s, a) for a in row] for row in self.rows])

    def transpose(self) -> "Matrix":
        return Matrix(self.field, list(zip(*self.rows)) if self.rows else [])

    # ---------------------------------------------------------------- tests

    def is_zero(self) -> bool:
        z = self.field.is_zero
        return all(z(a) for row in self.rows for a in row)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        return all(self.rows[i][j] == self.rows[j][i]
                   for i in range(self.nrows) for j in range(i + 1, self.ncols))

    def is_skew(self) -> bool:
        # Characteristic is never 2 here, so the diagonal must vanish.
        if not self.is_square():
            return False
        f = self.field
        for i in range(self.nrows):
            if not f.is_zero(self.rows[i][i]):
                return False
            for j in range(i + 1, self.ncols):
                if self.rows[i][j] != f.neg(self.rows[j][i]):
                    return False
        return True

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows
                and self.ncols == other.ncols)

    def __hash__(self):
        return hash((self.field, self.nrows, self.ncols, self.rows))

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.nrows}x{self.ncols})"

    def map_to_field(self, field) -> "Matrix":
        """Re-tag entries into another field (e.g. QQ -> F_p reduction)."""
        return Matrix(field, self.rows)


# -------------------------------------------------------------------- stacking


def hstack(blocks: Sequence[Matrix]) -> Matrix:
    field = blocks[0].field
    nrows = blocks[0].nrows
    for b in blocks[1:]:
        same_field(field, b.field)
        if b.nrows != nrows:
            raise ShapeError("hstack row mismatch")
    return Matrix(field, [sum((list(b.rows[i]) for b in blocks), [])
                          for i in range(nrows)])


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    field = blocks[0].field
    ncols = blocks[0].ncols
    rows = []
    for b in blocks:
        same_field(field, b.field)
        if b.ncols != ncols:
            raise ShapeError("vstack column mismatch")
        rows.extend(b.rows)
    return Matrix(field, rows)


def block_matrix(grid: Sequence[Sequence[Matrix]]) -> Matrix:
    return vstack([hstack(row) for row in grid])


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    field = blocks[0].field
    total_r = sum(b.nrows for b in blocks)
    total_c = sum(b.ncols for b in blocks)
    out = [[field.zero()] * total_c for _ in range(total_r)]
    r0 = c0 = 0
    for b in blocks:
        same_field(field, b.field)
        for i, row in enumerate(b.rows):
            out[r0 + i][c0:c0 + b.ncols] = row
        r0 += b.nrows
        c0 += b.ncols
    return Matrix(field, out)


def mat_vec(m: Matrix, v: Sequence) -> tuple:
    if len(v) != m.ncols:
        raise ShapeError("matrix-vector shape mismatch")
    f = m.field
    vv = [f.of(x) for x in v]
    add, mul, zero = f.add, f.mul, f.zero()
    out = []
    for row in m.rows:
        acc = zero
        for a, b in zip(row, vv):
            if a and b:
                acc = add(acc, mul(a, b))
        out.append(acc)
    return tuple(out)


# ----------------------------------------------------------------- elimination


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form with first-nonzero pivoting.

    Returns:
        (R, pivots) where R is the canonical RREF of m and pivots lists the
        pivot column of each nonzero row in order.  Canonical: any two
        matrices with the same row space produce identical R.
    """
    f = m.field
    rows = [list(r) for r in m.rows]
    nrows, ncols = m.nrows, m.ncols
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if not f.is_zero(rows[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = f.inv(rows[r][c])
        rows[r] = [f.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and not f.is_zero(rows[i][c]):
                factor = rows[i][c]
                rows[i] = [f.sub(x, f.mul(factor, y))
                           for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return Matrix(f, rows), tuple(pivots)


def rank_kernel(m: Matrix) -> tuple[int, tuple[tuple, ...]]:
    """Rank and canonical kernel basis (as tuples, one per free column)."""
    reduced, pivots = rref(m)
    return len(pivots), _kernel_from_rref(reduced, pivots)


def _kernel_from_rref(reduced: Matrix, pivots: tuple[int, ...]) -> tuple[tuple, ...]:
    f = reduced.field
    ncols = reduced.ncols
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [f.zero()] * ncols
        vec[free] = f.one()
        for row_idx, pc in enumerate(pivots):
            vec[pc] = f.neg(reduced.rows[row_idx][free])
        basis.append(tuple(vec))
    return tuple(basis)


@dataclass(frozen=True)
class AffineSolutionSpace:
    """Solutions of M x = rhs: one particular point plus a kernel basis."""

    field: object
    particular: tuple
    basis: tuple[tuple, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def point(self, coefficients: Sequence) -> tuple:
        """particular + sum(c_k * basis_k); used for seeded sampling."""
        if len(coefficients) != len(self.basis):
            raise ShapeError("coefficient count does not match kernel dim")
        f = self.field
        out = list(self.particular)
        for c, vec in zip(coefficients, self.basis):
            c = f.of(c)
            if f.is_zero(c):
                continue
            for i, v in enumerate(vec):
                out[i] = f.add(out[i], f.mul(c, v))
        return tuple(out)

    def contains(self, x: Sequence) -> bool:
        """Exact membership test (solves for the kernel coefficients)."""
        f = self.field
        diff = [f.sub(f.of(a), b) for a, b in zip(x, self.particular)]
        if len(diff) != len(self.particular):
            raise ShapeError("dimension mismatch in membership test")
        if not self.basis:
            return all(f.is_zero(d) for d in diff)
        cols = Matrix(f, [list(col) for col in zip(*self.basis)])
        return solve_affine(cols, diff) is not None


def solve_affine(m: Matrix, rhs: Sequence) -> Optional[AffineSolutionSpace]:
    """Solve M x = rhs exactly.

    Returns:
        The full affine solution space, or None when the system is
        inconsistent.  The particular solution sets all free variables to
        zero, so results are canonical.
    """
    if len(rhs) != m.nrows:
        raise ShapeError("rhs length does not match row count")
    f = m.field
    aug = hstack([m, Matrix.column(f, rhs)])
    reduced, pivots = rref(aug)
    if pivots and pivots[-1] == m.ncols:
        return None
    particular = [f.zero()] * m.ncols
    for row_idx, pc in enumerate(pivots):
        particular[pc] = reduced.rows[row_idx][m.ncols]
    body = reduced.block(0, 0, reduced.nrows, m.ncols)
    kernel = _kernel_from_rref(body, pivots)
    return AffineSolutionSpace(f, tuple(particular), kernel)


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise ShapeError("inverse of a non-square matrix")
    f = m.field
    aug = hstack([m, Matrix.identity(f, m.nrows)])
    reduced, pivots = rref(aug)
    if len(pivots) != m.nrows or any(pc >= m.nrows for pc in pivots):
        raise SingularMatrixError("matrix is singular")
    return reduced.block(0, m.nrows, m.nrows, m.nrows)


def congruence(m: Matrix, g: Matrix) -> Matrix:
    """g @ m @ g^T; preserves symmetry and skewness of m."""
    return g @ m @ g.transpose()


# ------------------------------------------------------------------ symplectic


def std_symplectic(field, size: int) -> Matrix:
    """The standard skew form on an even-dimensional space.

    Layout for size = 2n+2: an [[0, I_n], [-I_n, 0]] block on the first 2n
    coordinates followed by a 2x2 [[0,1],[-1,0]] tail.  For size 2 only the
    tail remains.
    """
    if size % 2 or size < 2:
        raise ShapeError(f"standard symplectic form needs even size >= 2, got {size}")
    n = size // 2 - 1
    f = field
    q = [[f.zero()] * size for _ in range(size)]
    one = f.one()
    for i in range(n):
        q[i][n + i] = one
        q[n + i][i] = f.neg(one)
    q[2 * n][2 * n + 1] = one
    q[2 * n + 1][2 * n] = f.neg(one)
    return Matrix(f, q)


def symplectic_framing(s: Matrix) -> Matrix:
    """Exact psi with psi^T S psi = Q_std for a nondegenerate skew S.

    Skew Gram-Schmidt: repeatedly take the first unpaired basis vector u,
    the first pool vector v with S(u, v) != 0 (normalized so the pairing is
    1), and clear both from the remaining pool.  The pairs are then arranged
    as u_1..u_n, v_1..v_n, u_{n+1}, v_{n+1} to match the Q_std layout; on
    S = Q_std itself this returns the identity.

    Raises:
        DegenerateFormError: if S is not skew or has a radical.
    """
    f = s.field
    if not s.is_skew():
        raise DegenerateFormError("form is not skew-symmetric")
    size = s.nrows
    if size % 2:
        raise DegenerateFormError("odd size skew form is degenerate")

    def pairing(u, v):
        return _dot(f, u, mat_vec(s, v))

    pool = [tuple(f.one() if i == j else f.zero() for j in range(size))
            for i in range(size)]
    pairs = []
    while pool:
        u = pool.pop(0)
        v_idx = None
        for k, w in enumerate(pool):
            if not f.is_zero(pairing(u, w)):
                v_idx = k
                break
        if v_idx is None:
            raise DegenerateFormError("skew form has a radical vector")
        v = pool.pop(v_idx)
        scale = f.inv(pairing(u, v))
        v = tuple(f.mul(scale, x) for x in v)
        new_pool = []
        for w in pool:
            su_w = pairing(w, v)
            sw_u = pairing(w, u)
            adj = list(w)
            for i in range(size):
                adj[i] = f.add(f.sub(adj[i], f.mul(su_w, u[i])),
                               f.mul(sw_u, v[i]))
            if any(not f.is_zero(x) for x in adj):
                new_pool.append(tuple(adj))
        pool = new_pool
        pairs.append((u, v))

    n = len(pairs) - 1
    columns = ([pairs[i][0] for i in range(n)] + [pairs[i][1] for i in range(n)]
               + [pairs[n][0], pairs[n][1]])
    psi = Matrix(f, [list(col) for col in zip(*columns)])
    if congruence(s, psi.transpose()) != std_symplectic(f, size):
        raise DegenerateFormError("framing verification failed")
    return psi


def _dot(f, u, v):
    acc = f.zero()
    for a, b in zip(u, v):
        if a and b:
            acc = f.add(acc, f.mul(a, b))
    return acc


# ------------------------------------------------------------------- transforms


def cayley_orthogonal(k: Matrix) -> Matrix:
    """(I - K)^-1 (I + K) for skew K: exactly orthogonal when defined."""
    if not k.is_skew():
        raise ShapeError("Cayley input must be skew")
    f = k.field
    ident = Matrix.identity(f, k.nrows)
    g = inverse(ident - k) @ (ident + k)
    if g @ g.transpose() != ident:
        raise SingularMatrixError("Cayley transform failed orthogonality check")
    return g


def hamiltonian_from_symmetric(s0: Matrix) -> Matrix:
    """X = Q^-1 S0 with S0 symmetric; then X^T Q + Q X = 0."""
    if not s0.is_symmetric():
        raise ShapeError("expected a symmetric seed matrix")
    q = std_symplectic(s0.field, s0.nrows)
    # Q^2 = -I for the standard form, so Q^-1 = -Q.
    return (-q) @ s0


def cayley_symplectic(x: Matrix) -> Matrix:
    """(I - X)^-1 (I + X) for Hamiltonian X: exactly symplectic when defined."""
    f = x.field
    q = std_symplectic(f, x.nrows)
    if (x.transpose() @ q) + (q @ x) != Matrix.zeros(f, x.nrows, x.nrows):
        raise ShapeError("Cayley input must be Hamiltonian for Q_std")
    ident = Matrix.identity(f, x.nrows)
    s = inverse(ident - x) @ (ident + x)
    if s.transpose() @ q @ s != q:
        raise SingularMatrixError("Cayley transform failed symplectic check")
    return s
