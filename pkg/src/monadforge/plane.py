"""Restriction to a plane and the affine fibers over sigma data.

Fixing the 3-dimensional coordinate subspace that drops the first ambient
variable sends a 4-variable net to a 3-variable one by pure block
bookkeeping.  On octuples the same restriction factors through a projection
onto sigma points (B1, B2, C, four vectors); recovering the forgotten
symmetric pair (A1, A2) from a sigma point is a linear problem, solved here
in exact symmetric-pair coordinates.

Coordinate convention, fixed so solution bases compare across runs: a
symmetric matrix is listed by its upper triangle row-major, and a pair is A1
followed by A2, giving n(n+1) coordinates in total.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .matrices import AffineSolutionSpace, Matrix, rank_kernel, solve_affine
from .nets import QuadricNet, barth_verify, pair_key
from .reports import FAIL, VerificationReport
from .rng import CounterRng
from .slices import (BarthOctuple, c_of_octuple, closed_residuals,
                     gamma_conditions, wedge)


class PlaneError(ValueError):
    """Malformed plane-restriction data."""


def phi_restrict(net: QuadricNet) -> QuadricNet:
    """Drop every block touching the first ambient variable.

    The surviving blocks (2,3), (2,4), (3,4) become the plane net's (1,2),
    (1,3), (2,3); flattening the result gives the 3n x 3n corner of the
    original flattening away from the first row and column of blocks.
    """
    if net.ambient != 4:
        raise PlaneError("plane restriction starts from a 4-variable net")
    blocks = {}
    for (i, j), (pi, pj) in (((2, 3), (1, 2)), ((2, 4), (1, 3)),
                             ((3, 4), (2, 3))):
        m = net.block(i, j)
        if not m.is_zero():
            blocks[pair_key(pi, pj)] = m
    return QuadricNet(net.field, net.n, 3, blocks)


@dataclass(frozen=True)
class SigmaPoint:
    """(B1, B2, C, a1, a2, b1, b2) with B1, B2 symmetric.

    C is symmetric exactly on the image of the closed locus; projections of
    arbitrary octuples are allowed to carry the asymmetry, and is_closed
    reports it.
    """

    b_mat1: Matrix
    b_mat2: Matrix
    c_mat: Matrix
    a_vec1: Matrix
    a_vec2: Matrix
    b_vec1: Matrix
    b_vec2: Matrix

    def __post_init__(self):
        n = self.b_mat1.nrows
        for label, m in (("B1", self.b_mat1), ("B2", self.b_mat2)):
            if m.nrows != n or m.ncols != n or not m.is_symmetric():
                raise PlaneError(f"{label} must be symmetric {n}x{n}")
        if self.c_mat.nrows != n or self.c_mat.ncols != n:
            raise PlaneError(f"C must be {n}x{n}")
        for label, v in (("a1", self.a_vec1), ("a2", self.a_vec2),
                         ("b1", self.b_vec1), ("b2", self.b_vec2)):
            if v.nrows != n or v.ncols != 1:
                raise PlaneError(f"{label} must be a column {n}-vector")

    @property
    def n(self) -> int:
        return self.b_mat1.nrows

    @property
    def field(self):
        return self.b_mat1.field

    @property
    def is_closed(self) -> bool:
        return self.c_mat.is_symmetric()

    def parts(self) -> tuple[Matrix, ...]:
        return (self.b_mat1, self.b_mat2, self.c_mat, self.a_vec1,
                self.a_vec2, self.b_vec1, self.b_vec2)

    def map_to_field(self, field) -> "SigmaPoint":
        return SigmaPoint(*(m.map_to_field(field) for m in self.parts()))


def psi_project(oct_: BarthOctuple) -> SigmaPoint:
    """Forget (A1, A2), keep (B1, B2) and the cross matrix C.

    On octuples satisfying the closed identities the result matches the
    plane restriction of the carried net blockwise (asserted there, not
    here: this projection is defined on every octuple).
    """
    return SigmaPoint(oct_.b_mat1, oct_.b_mat2, c_of_octuple(oct_),
                      oct_.a_vec1, oct_.a_vec2, oct_.b_vec1, oct_.b_vec2)


def plane_net_of_sigma(sigma: SigmaPoint) -> QuadricNet:
    """The 3-variable net with blocks (B1, B2, C); needs C symmetric."""
    if not sigma.is_closed:
        raise PlaneError("C is not symmetric: no plane net to build")
    blocks = {}
    for key, m in ((pair_key(1, 2), sigma.b_mat1),
                   (pair_key(1, 3), sigma.b_mat2),
                   (pair_key(2, 3), sigma.c_mat)):
        if not m.is_zero():
            blocks[key] = m
    return QuadricNet(sigma.field, sigma.n, 3, blocks)


def sigma_h_action(g: Matrix, m: Matrix, sigma: SigmaPoint) -> SigmaPoint:
    """The action induced so that projection is equivariant.

    g acts by congruence on B1, B2, C and linearly on the vectors.  m fixes
    all three matrices: the only m-sensitive part of C is a1 b2^T - b1 a2^T,
    which expands under the vector mixing to det(m) times itself.  The
    vectors mix exactly as in the octuple action.

    Raises:
        PlaneError: g not orthogonal or det(m) != 1.
    """
    f = sigma.field
    n = sigma.n
    if g.nrows != n or g @ g.transpose() != Matrix.identity(f, n):
        raise PlaneError("first component must be orthogonal of size n")
    if m.nrows != 2 or m.ncols != 2:
        raise PlaneError("second component must be 2x2")
    det = f.sub(f.mul(m[0, 0], m[1, 1]), f.mul(m[0, 1], m[1, 0]))
    if det != f.one():
        raise PlaneError("second component must have determinant 1")
    gt = g.transpose()
    s, t = m[0, 0], m[0, 1]
    u, v = m[1, 0], m[1, 1]

    def mix(a: Matrix, b: Matrix) -> tuple[Matrix, Matrix]:
        return a.scale(s) + b.scale(u), a.scale(t) + b.scale(v)

    va1, vb1 = mix(sigma.a_vec1, sigma.b_vec1)
    va2, vb2 = mix(sigma.a_vec2, sigma.b_vec2)
    return SigmaPoint(g @ sigma.b_mat1 @ gt, g @ sigma.b_mat2 @ gt,
                      g @ sigma.c_mat @ gt,
                      g @ va1, g @ va2, g @ vb1, g @ vb2)


# ------------------------------------------------- symmetric-pair coordinates


def symmetric_basis(field, n: int) -> list[Matrix]:
    """Unit symmetric matrices in upper-triangle row-major order."""
    out = []
    for i in range(n):
        for j in range(i, n):
            rows = [[field.zero()] * n for _ in range(n)]
            rows[i][j] = field.one()
            rows[j][i] = field.one()
            out.append(Matrix(field, rows))
    return out


def pair_to_vector(a1: Matrix, a2: Matrix) -> tuple:
    """Coordinates of a symmetric pair: A1's upper triangle then A2's."""
    for label, m in (("A1", a1), ("A2", a2)):
        if not m.is_symmetric():
            raise PlaneError(f"{label} must be symmetric")
    coords = []
    for m in (a1, a2):
        for i in range(m.nrows):
            for j in range(i, m.nrows):
                coords.append(m[i, j])
    return tuple(coords)


def vector_to_pair(field, n: int, coords) -> tuple[Matrix, Matrix]:
    half = n * (n + 1) // 2
    if len(coords) != 2 * half:
        raise PlaneError(f"expected {2 * half} coordinates")

    def unpack(chunk):
        rows = [[field.zero()] * n for _ in range(n)]
        k = 0
        for i in range(n):
            for j in range(i, n):
                rows[i][j] = chunk[k]
                rows[j][i] = chunk[k]
                k += 1
        return Matrix(field, rows)

    return unpack(coords[:half]), unpack(coords[half:])


def octuple_of_sigma(sigma: SigmaPoint, a1: Matrix, a2: Matrix
                     ) -> BarthOctuple:
    """Recombine a sigma point with a symmetric pair into an octuple."""
    return BarthOctuple(a1, a2, sigma.b_mat1, sigma.b_mat2,
                        sigma.a_vec1, sigma.a_vec2,
                        sigma.b_vec1, sigma.b_vec2)


def _upper_entries(m: Matrix) -> list:
    return [m[i, j] for i in range(m.nrows)
            for j in range(i + 1, m.nrows)]


def _all_entries(m: Matrix) -> list:
    return [m[i, j] for i in range(m.nrows) for j in range(m.ncols)]


def fiber_system(sigma: SigmaPoint) -> tuple[Matrix, tuple]:
    """The linear system cutting out the symmetric pairs over a sigma point.

    Rows: the strict upper triangle of [A1, B1] = -(a1 wedge b1), then of
    [A2, B2] = -(a2 wedge b2) (commutators of symmetric matrices are skew,
    so those triangles carry everything), then all of
    A1 B2 - B1 A2 = C - a1 b2^T + b1 a2^T.  Columns follow the
    symmetric-pair coordinates.
    """
    f = sigma.field
    n = sigma.n
    basis = symmetric_basis(f, n)
    b1, b2 = sigma.b_mat1, sigma.b_mat2
    zero_skew = [f.zero()] * (n * (n - 1) // 2)
    columns = []
    for e in basis:
        comm1 = e @ b1 - b1 @ e
        cross = e @ b2
        columns.append(_upper_entries(comm1) + zero_skew
                       + _all_entries(cross))
    for e in basis:
        comm2 = e @ b2 - b2 @ e
        cross = -(b1 @ e)
        columns.append(zero_skew + _upper_entries(comm2)
                       + _all_entries(cross))
    rows = [[col[r] for col in columns] for r in range(len(columns[0]))]
    target1 = -wedge(sigma.a_vec1, sigma.b_vec1)
    target2 = -wedge(sigma.a_vec2, sigma.b_vec2)
    target3 = (sigma.c_mat
               - sigma.a_vec1 @ sigma.b_vec2.transpose()
               + sigma.b_vec1 @ sigma.a_vec2.transpose())
    rhs = (_upper_entries(target1) + _upper_entries(target2)
           + _all_entries(target3))
    return Matrix(f, rows), tuple(rhs)


def fiber_solve(sigma: SigmaPoint) -> Optional[AffineSolutionSpace]:
    """Exact affine solution space of the fiber system, None if empty."""
    m, rhs = fiber_system(sigma)
    return solve_affine(m, rhs)


@dataclass(frozen=True)
class FiberReport:
    """Measured fiber data for one sigma point.

    claimed_dim is the reference value 4n; measured_dim is what the linear
    system actually leaves.  The two regularly disagree for small n, which
    is recorded, not adjudicated.  Sampled solutions are recombined into
    octuples: the closed identities must then hold identically (asserted),
    while the open conditions (full rank, wedge ranks) are only tallied.
    """

    n: int
    rows: int
    cols: int
    rank: int
    consistent: bool
    measured_dim: Optional[int]
    claimed_dim: int
    samples: int = 0
    open_passes: int = 0

    @property
    def matches_claim(self) -> Optional[bool]:
        if self.measured_dim is None:
            return None
        return self.measured_dim == self.claimed_dim

    def to_jsonable(self) -> dict:
        return {"n": self.n, "rows": self.rows, "cols": self.cols,
                "rank": self.rank, "consistent": self.consistent,
                "measured_dim": self.measured_dim,
                "claimed_dim": self.claimed_dim,
                "matches_claim": self.matches_claim,
                "samples": self.samples, "open_passes": self.open_passes}


def fiber_report(sigma: SigmaPoint, samples: int = 0, seed: int = 0,
                 prime: Optional[int] = None) -> FiberReport:
    """Solve the fiber and optionally sample it against the open conditions.

    Each sample is a random point of the solution space recombined with the
    sigma data; its closed identities are asserted exactly, and the sample
    counts as an open pass when the rank and wedge-rank conditions also
    hold (checked modulo a prime for speed).
    """
    m, rhs = fiber_system(sigma)
    rank, _ = rank_kernel(m)
    space = solve_affine(m, rhs)
    n = sigma.n
    base = FiberReport(
        n=n, rows=m.nrows, cols=m.ncols, rank=rank,
        consistent=space is not None,
        measured_dim=None if space is None else space.dim,
        claimed_dim=4 * n)
    if space is None or samples <= 0:
        return base
    rng = CounterRng(seed, 0x51B3)
    open_passes = 0
    for _ in range(samples):
        coords = [rng.int_between(-9, 9) for _ in range(space.dim)]
        a1, a2 = vector_to_pair(sigma.field, n, space.point(coords))
        oct_ = octuple_of_sigma(sigma, a1, a2)
        residuals = closed_residuals(oct_)
        assert all(r.is_zero() for r in residuals), \
            "fiber point violates the closed identities"
        report = gamma_conditions(oct_, mode="fast", prime=prime)
        if (report.condition("rank").verdict != FAIL
                and report.condition("wedge-rank").verdict != FAIL):
            open_passes += 1
    return FiberReport(
        n=base.n, rows=base.rows, cols=base.cols, rank=base.rank,
        consistent=True, measured_dim=base.measured_dim,
        claimed_dim=base.claimed_dim, samples=samples,
        open_passes=open_passes)


def mx_verify(pnet: QuadricNet, mode: str = "exact",
              prime: Optional[int] = None) -> VerificationReport:
    """Plane-monad membership: the ambient-3 run of the net verifier.

    Same conditions as the 4-variable check (rank, subbundle, sections),
    with 3-variable minor certificates; reported under the subject
    "plane-net".  For n = 1 the rank condition is unsatisfiable (a 3x3 skew
    matrix has rank at most 2 < 4), matching the known instability of the
    smallest case.
    """
    if pnet.ambient != 3:
        raise PlaneError("plane verification expects a 3-variable net")
    inner = barth_verify(pnet, mode=mode, prime=prime)
    return VerificationReport("plane-net", inner.mode, inner.field_name,
                              inner.conditions)
