"""Nets of quadrics and their symplectic quotient presentations.

A net assigns a symmetric n x n block to each coordinate 2-plane of the
ambient space (dimension 4 or 3).  Flattening interleaves the blocks into a
skew matrix of size ambient*n; when that matrix has rank exactly 2n+2 the
row space carries a nondegenerate skew form and the induced quotient is the
middle term of a three-term monad

    H (n) --a--> W (2n+2) --adual--> H-dual (n),

twisted by O(-1), O, O(1).  Everything here is exact; probabilistic variants
reduce modulo one prime and mark their verdicts accordingly.

Coordinate convention: the flattened space is indexed ambient-major, entry
(i-1)*n + h for basis vector e_i tensor h-th generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .fields import PrimeField, QQ, default_prime
from .forms import LinearFormMatrix, minor_ideal
from .groebner import projective_emptiness
from .matrices import Matrix, hstack, rank_kernel, rref, vstack
from .reports import (FAIL, INDETERMINATE, PASS, PROBABLE, ConditionResult,
                      VerificationReport)


class NetError(ValueError):
    """Structurally invalid net data."""


class WrongRankError(NetError):
    """Flattened rank differs from 2n+2, so no presentation exists."""

    def __init__(self, actual: int, expected: int):
        super().__init__(f"flattened net has rank {actual}, needs {expected}")
        self.actual = actual
        self.expected = expected


def ambient_pairs(ambient: int) -> tuple[tuple[int, int], ...]:
    """Ordered basis 2-planes (i, j), i < j, 1-based."""
    if ambient not in (3, 4):
        raise NetError(f"ambient dimension {ambient} unsupported")
    return tuple((i, j) for i in range(1, ambient + 1)
                 for j in range(i + 1, ambient + 1))


def pair_key(i: int, j: int) -> str:
    return f"{i}{j}"


class QuadricNet:
    """Symmetric n x n blocks indexed by coordinate pairs; missing keys are
    zero blocks.  Immutable after construction."""

    __slots__ = ("field", "n", "ambient", "blocks")

    def __init__(self, field, n: int, ambient: int, blocks: dict[str, Matrix]):
        if n < 1:
            raise NetError("charge must be at least 1")
        valid = {pair_key(i, j) for i, j in ambient_pairs(ambient)}
        kept = {}
        for key, m in blocks.items():
            if key not in valid:
                raise NetError(f"unknown block key {key!r}")
            if m.field != field:
                raise NetError(f"block {key} lives in the wrong field")
            if m.nrows != n or m.ncols != n:
                raise NetError(f"block {key} is {m.nrows}x{m.ncols}, needs {n}x{n}")
            if not m.is_symmetric():
                raise NetError(f"block {key} is not symmetric")
            if not m.is_zero():
                kept[key] = m
        self.field = field
        self.n = n
        self.ambient = ambient
        self.blocks = kept

    def block(self, i: int, j: int) -> Matrix:
        if not 1 <= i < j <= self.ambient:
            raise NetError(f"block index ({i},{j}) out of range")
        found = self.blocks.get(pair_key(i, j))
        return found if found is not None else Matrix.zeros(self.field, self.n, self.n)

    def flatten(self) -> Matrix:
        """Skew (ambient*n)-square matrix with block (i,j) = M_ij above the
        diagonal and -M_ij mirrored below."""
        n, amb, f = self.n, self.ambient, self.field
        grid = [[Matrix.zeros(f, n, n) for _ in range(amb)] for _ in range(amb)]
        for i, j in ambient_pairs(amb):
            m = self.blocks.get(pair_key(i, j))
            if m is None:
                continue
            grid[i - 1][j - 1] = m
            grid[j - 1][i - 1] = -m
        return vstack([hstack(row) for row in grid])

    def map_to_field(self, field) -> "QuadricNet":
        return QuadricNet(field, self.n, self.ambient,
                          {k: m.map_to_field(field) for k, m in self.blocks.items()})

    def __eq__(self, other):
        return (isinstance(other, QuadricNet) and self.field == other.field
                and self.n == other.n and self.ambient == other.ambient
                and self.blocks == other.blocks)

    def __hash__(self):
        return hash((self.field, self.n, self.ambient,
                     tuple(sorted(self.blocks.items(), key=lambda kv: kv[0]))))

    def __repr__(self):
        keys = ",".join(sorted(self.blocks)) or "zero"
        return f"QuadricNet(n={self.n}, ambient={self.ambient}, blocks={keys})"


def net_from_flatten(m: Matrix, n: int, ambient: int) -> QuadricNet:
    """Inverse of flatten.  Raises NetError when m is not the flattening of
    a net (block asymmetry or nonzero diagonal blocks)."""
    if m.nrows != ambient * n or m.ncols != ambient * n:
        raise NetError("flattened matrix has the wrong size")
    blocks = {}
    for i, j in ambient_pairs(ambient):
        blocks[pair_key(i, j)] = m.block((i - 1) * n, (j - 1) * n, n, n)
    net = QuadricNet(m.field, n, ambient, blocks)
    if net.flatten() != m:
        raise NetError("matrix is not the flattening of a net")
    return net


def decompose_pr2(t: Matrix, n: int, ambient: int) -> tuple[QuadricNet, Matrix]:
    """Split a skew matrix on the tensor space into its net part and the
    complementary part (skew blocks paired symmetrically across the
    diagonal).  The two summands always add back to the input.
    """
    if t.nrows != ambient * n or t.ncols != ambient * n:
        raise NetError("input has the wrong size")
    if not t.is_skew():
        raise NetError("input is not skew")
    f = t.field
    half = f.inv(f.of(2))
    blocks = {}
    for i, j in ambient_pairs(ambient):
        tij = t.block((i - 1) * n, (j - 1) * n, n, n)
        blocks[pair_key(i, j)] = (tij + tij.transpose()).scale(half)
    net = QuadricNet(f, n, ambient, blocks)
    return net, t - net.flatten()


@dataclass(frozen=True)
class NetPresentation:
    """Quotient data of a full-rank net: c maps the tensor space onto the
    (2n+2)-dimensional quotient, q_w is the induced nondegenerate skew form,
    and c-transpose * q_w * c reproduces the flattened net exactly."""

    net: QuadricNet
    c: Matrix
    q_w: Matrix

    @property
    def w_dim(self) -> int:
        return 2 * self.net.n + 2

    def map_to_field(self, field) -> "NetPresentation":
        return NetPresentation(self.net.map_to_field(field),
                               self.c.map_to_field(field),
                               self.q_w.map_to_field(field))


def presentation(net: QuadricNet) -> NetPresentation:
    """Canonical quotient presentation of a rank-(2n+2) net.

    The row space basis is the reduced echelon form of the flattened matrix,
    so identical nets give identical presentations.  The induced form is the
    principal submatrix on the pivot columns; the reconstruction identity is
    asserted on every call.

    Raises:
        WrongRankError: when the flattened rank is not 2n+2.
    """
    a = net.flatten()
    reduced, pivots = rref(a)
    w_dim = 2 * net.n + 2
    if len(pivots) != w_dim:
        raise WrongRankError(len(pivots), w_dim)
    c = Matrix(net.field, [reduced.rows[r] for r in range(w_dim)])
    q_w = a.submatrix(pivots, pivots)
    # c restricted to the pivot columns is the identity, which pins q_w:
    # a = c^T q_w c holds exactly or the construction is wrong.
    assert c.transpose() @ q_w @ c == a, "presentation identity failed"
    assert q_w.is_skew()
    return NetPresentation(net, c, q_w)


def monad_maps(pres: NetPresentation) -> tuple[LinearFormMatrix, LinearFormMatrix]:
    """The two maps of the monad as matrices of linear forms.

    a has shape (2n+2) x n with x_i coefficient the i-th column block of c;
    adual = a-transpose * q_w-transpose has shape n x (2n+2).  Their
    composition is the zero quadratic form; asserted, since it is forced by
    the symmetry of the net blocks.
    """
    net = pres.net
    n, amb, f = net.n, net.ambient, net.field
    col_blocks = [pres.c.block(0, i * n, pres.w_dim, n) for i in range(amb)]
    a = LinearFormMatrix(f, amb, col_blocks)
    qwt = pres.q_w.transpose()
    adual = LinearFormMatrix(f, amb, [cb.transpose() @ qwt for cb in col_blocks])
    for i in range(amb):
        for j in range(i, amb):
            cross = adual.coeffs[i] @ a.coeffs[j] + adual.coeffs[j] @ a.coeffs[i]
            assert cross.is_zero(), "monad composition is nonzero"
    return a, adual


def h1_twisted_cotangent(net: QuadricNet) -> int:
    """Rank of the flattened net; equals 2n+2 exactly on verified nets,
    where it matches the first cohomology of the bundle twisted by the
    cotangent sheaf."""
    rank, _ = rank_kernel(net.flatten())
    return rank


# ------------------------------------------------------------- verification


def _field_name(field) -> str:
    return "QQ" if field == QQ else f"GF({field.p})"


def section_kernel_dim(pres: NetPresentation) -> int:
    """Dimension of the kernel of the degree-0 section map W -> H-dual (x)
    linear forms; this counts global sections of the middle cohomology
    bundle."""
    _, adual = monad_maps(pres)
    stacked = vstack(list(adual.coeffs))
    rank, _ = rank_kernel(stacked)
    return pres.w_dim - rank


def barth_verify(net: QuadricNet, mode: str = "exact",
                 prime: Optional[int] = None) -> VerificationReport:
    """Full membership check for a net: rank, fiberwise surjectivity of the
    right monad map (via emptiness of its n x n minor locus), and vanishing
    of global sections.

    Args:
        net: rational or prime-field net.
        mode: "exact" certifies over the rationals; "fast" reduces modulo
            one prime and demotes passing verdicts to PROBABLE.
        prime: working prime for fast mode (default: the library prime).

    Returns:
        VerificationReport with conditions "rank", "subbundle", "sections".
    """
    if mode not in ("exact", "fast"):
        raise ValueError(f"unknown mode {mode!r}")
    work = net
    if mode == "fast":
        p = prime if prime is not None else default_prime()
        if net.field == QQ:
            work = net.map_to_field(PrimeField(p))
        elif isinstance(net.field, PrimeField):
            p = net.field.p
        else:
            raise ValueError("fast mode expects QQ or prime-field input")
    elif net.field != QQ:
        raise ValueError("exact mode requires rational input")
    pass_verdict = PASS if mode == "exact" else PROBABLE

    n = work.n
    w_dim = 2 * n + 2
    conditions = []
    rank, _ = rank_kernel(work.flatten())
    if rank == w_dim:
        conditions.append(ConditionResult(
            "rank", pass_verdict, f"flattened rank {rank}", {"rank": rank}))
        pres = presentation(work)
    else:
        conditions.append(ConditionResult(
            "rank", FAIL, f"flattened rank {rank}, needs {w_dim}",
            {"rank": rank, "required": w_dim}))
        pres = None

    if pres is None:
        blocked = "needs the rank condition to build the quotient"
        conditions.append(ConditionResult("subbundle", INDETERMINATE, blocked))
        conditions.append(ConditionResult("sections", INDETERMINATE, blocked))
        return VerificationReport("net", mode, _field_name(work.field),
                                  tuple(conditions))

    _, adual = monad_maps(pres)
    minors = minor_ideal(adual, n)
    cert = projective_emptiness(
        minors, mode="certified" if mode == "exact" else "probabilistic",
        prime=prime)
    conditions.append(subbundle_condition(cert, mode))

    h0 = section_kernel_dim(pres)
    if h0 == 0:
        conditions.append(ConditionResult("sections", pass_verdict,
                                          "no global sections", {"h0": 0}))
    else:
        conditions.append(ConditionResult("sections", FAIL,
                                          f"h0 = {h0}", {"h0": h0}))
    # name the field the verdicts were computed in, not the input field:
    # a PROBABLE report is a statement about the reduction
    return VerificationReport("net", mode, _field_name(work.field),
                              tuple(conditions))


def subbundle_condition(cert, mode: str) -> ConditionResult:
    """Map an emptiness certificate for the minor ideal onto a verdict for
    fiberwise surjectivity.  Nonempty over the algebraic closure is a
    definite failure; mod-p evidence keeps the caveat in the detail."""
    data = {"certificate": cert}
    if cert.kind == "empty":
        verdict = PASS if cert.mode == "certified" else PROBABLE
        return ConditionResult("subbundle", verdict,
                               "minor locus is empty", data)
    if cert.kind == "indeterminate":
        return ConditionResult("subbundle", INDETERMINATE, cert.detail, data)
    if cert.kind == "nonempty":
        return ConditionResult("subbundle", FAIL,
                               "rank drops at a rational point", data)
    # probable-nonempty
    if cert.mode == "certified":
        return ConditionResult("subbundle", FAIL,
                               "minor locus is nonempty over the closure", data)
    return ConditionResult("subbundle", FAIL,
                           "minor locus is nonempty mod p", data)
