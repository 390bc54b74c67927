"""Barth octuples: slice coordinates for framed monad points.

An octuple packs four symmetric n x n matrices and four n-vectors.  Its
tilde matrix is the (2n+2) x 4n block matrix

    [  0   1   A1  A2 ]
    [ -1   0   B1  B2 ]
    [  0   0  a1^T a2^T]
    [  0   0  b1^T b2^T]

and pairing it with the standard symplectic form gives the skew matrix that,
on the closed locus, is the flattening of a net with blocks
(1, A1, A2, B1, B2, C).  The block expansion of that pairing is a polynomial
identity (asserted on every call), so the closed conditions are exactly the
vanishing of the three commutator-plus-wedge residuals.

The acting group is O(n) x SL(2); both actions commute and (-1,-1) acts
trivially.  Embedding into the frame group transposes the 2x2 tail, which is
what makes the two action formulas agree (tested, not just asserted).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .fields import PrimeField, QQ, default_prime
from .forms import minor_ideal
from .groebner import projective_emptiness
from .matrices import (Matrix, block_diag, hstack, rank_kernel,
                       std_symplectic, vstack)
from .nets import (QuadricNet, _field_name, monad_maps, pair_key,
                   presentation, section_kernel_dim, subbundle_condition)
from .frames import GammaPoint, GroupElementG, embed_h_in_g
from .reports import (FAIL, INDETERMINATE, PASS, PROBABLE, ConditionResult,
                      VerificationReport)


class OctupleError(ValueError):
    """Malformed octuple data."""


class BlockMismatchError(OctupleError):
    """Strict net output requested but the closed conditions fail."""


def wedge(a: Matrix, b: Matrix) -> Matrix:
    """a b^T - b a^T for column vectors; skew, rank 0 or 2."""
    if a.ncols != 1 or b.ncols != 1 or a.nrows != b.nrows:
        raise OctupleError("wedge needs two column vectors of equal length")
    return a @ b.transpose() - b @ a.transpose()


def commutator(x: Matrix, y: Matrix) -> Matrix:
    return x @ y - y @ x


@dataclass(frozen=True)
class BarthOctuple:
    """(A1, A2, B1, B2, a1, a2, b1, b2) with the matrices symmetric."""

    a_mat1: Matrix
    a_mat2: Matrix
    b_mat1: Matrix
    b_mat2: Matrix
    a_vec1: Matrix
    a_vec2: Matrix
    b_vec1: Matrix
    b_vec2: Matrix

    def __post_init__(self):
        n = self.a_mat1.nrows
        for label, m in (("A1", self.a_mat1), ("A2", self.a_mat2),
                         ("B1", self.b_mat1), ("B2", self.b_mat2)):
            if m.nrows != n or m.ncols != n:
                raise OctupleError(f"{label} must be {n}x{n}")
            if not m.is_symmetric():
                raise OctupleError(f"{label} must be symmetric")
        for label, v in (("a1", self.a_vec1), ("a2", self.a_vec2),
                         ("b1", self.b_vec1), ("b2", self.b_vec2)):
            if v.nrows != n or v.ncols != 1:
                raise OctupleError(f"{label} must be a column {n}-vector")

    @property
    def n(self) -> int:
        return self.a_mat1.nrows

    @property
    def field(self):
        return self.a_mat1.field

    def parts(self) -> tuple[Matrix, ...]:
        return (self.a_mat1, self.a_mat2, self.b_mat1, self.b_mat2,
                self.a_vec1, self.a_vec2, self.b_vec1, self.b_vec2)

    def map_to_field(self, field) -> "BarthOctuple":
        return BarthOctuple(*(m.map_to_field(field) for m in self.parts()))


def zero_octuple(field, n: int) -> BarthOctuple:
    z = Matrix.zeros(field, n, n)
    v = Matrix.zeros(field, n, 1)
    return BarthOctuple(z, z, z, z, v, v, v, v)


def tilde_matrix(oct_: BarthOctuple) -> Matrix:
    f = oct_.field
    n = oct_.n
    zero = Matrix.zeros(f, n, n)
    ident = Matrix.identity(f, n)
    zrow = Matrix.zeros(f, 1, n)
    return vstack([
        hstack([zero, ident, oct_.a_mat1, oct_.a_mat2]),
        hstack([-ident, zero, oct_.b_mat1, oct_.b_mat2]),
        hstack([zrow, zrow, oct_.a_vec1.transpose(), oct_.a_vec2.transpose()]),
        hstack([zrow, zrow, oct_.b_vec1.transpose(), oct_.b_vec2.transpose()]),
    ])


def c_of_octuple(oct_: BarthOctuple) -> Matrix:
    """C = A1 B2 - B1 A2 + a1 b2^T - b1 a2^T; symmetric exactly when the
    third closed identity holds."""
    return (oct_.a_mat1 @ oct_.b_mat2 - oct_.b_mat1 @ oct_.a_mat2
            + oct_.a_vec1 @ oct_.b_vec2.transpose()
            - oct_.b_vec1 @ oct_.a_vec2.transpose())


def closed_residuals(oct_: BarthOctuple) -> tuple[Matrix, Matrix, Matrix]:
    """The three matrices whose vanishing is the closed membership
    condition.  The third equals C - C^T."""
    r1 = commutator(oct_.a_mat1, oct_.b_mat1) + wedge(oct_.a_vec1, oct_.b_vec1)
    r2 = commutator(oct_.a_mat2, oct_.b_mat2) + wedge(oct_.a_vec2, oct_.b_vec2)
    r3 = (commutator(oct_.a_mat1, oct_.b_mat2)
          + commutator(oct_.a_mat2, oct_.b_mat1)
          + wedge(oct_.a_vec1, oct_.b_vec2)
          + wedge(oct_.a_vec2, oct_.b_vec1))
    return r1, r2, r3


def skew_of_octuple(oct_: BarthOctuple) -> Matrix:
    """tilde^T Q tilde, with the block expansion asserted entrywise:
    diagonal corrections are the first two closed residuals, the (3,4)
    block is C."""
    f = oct_.field
    n = oct_.n
    tilde = tilde_matrix(oct_)
    q = std_symplectic(f, 2 * n + 2)
    product = tilde.transpose() @ q @ tilde
    r1, r2, _ = closed_residuals(oct_)
    c = c_of_octuple(oct_)
    zero = Matrix.zeros(f, n, n)
    ident = Matrix.identity(f, n)
    a1, a2 = oct_.a_mat1, oct_.a_mat2
    b1, b2 = oct_.b_mat1, oct_.b_mat2
    block_form = vstack([
        hstack([zero, ident, a1, a2]),
        hstack([-ident, zero, b1, b2]),
        hstack([-a1, -b1, r1, c]),
        hstack([-a2, -b2, -c.transpose(), r2]),
    ])
    assert product == block_form, "block expansion identity failed"
    return product


def a_of_octuple(oct_: BarthOctuple, strict: bool = True
                 ) -> tuple[Optional[QuadricNet], Matrix]:
    """The net carried by an octuple, together with the raw skew matrix.

    On the closed locus the skew matrix is the flattening of the net with
    blocks (1, A1, A2, B1, B2, C).  Off it there is no net: strict mode
    raises BlockMismatchError, lenient mode returns (None, skew).
    """
    skew = skew_of_octuple(oct_)
    r1, r2, r3 = closed_residuals(oct_)
    if not (r1.is_zero() and r2.is_zero() and r3.is_zero()):
        if strict:
            raise BlockMismatchError(
                "closed conditions fail: the skew matrix is not a net")
        return None, skew
    f = oct_.field
    n = oct_.n
    net = QuadricNet(f, n, 4, {
        pair_key(1, 2): Matrix.identity(f, n),
        pair_key(1, 3): oct_.a_mat1,
        pair_key(1, 4): oct_.a_mat2,
        pair_key(2, 3): oct_.b_mat1,
        pair_key(2, 4): oct_.b_mat2,
        pair_key(3, 4): c_of_octuple(oct_),
    })
    assert net.flatten() == skew, "net blocks disagree with the skew matrix"
    return net, skew


def gamma_of_octuple(oct_: BarthOctuple) -> GammaPoint:
    """The framed point whose matrix is the tilde matrix; pulling back the
    standard form recovers skew_of_octuple by construction."""
    return GammaPoint(oct_.n, 4, tilde_matrix(oct_))


# -------------------------------------------------------------- certificates


@dataclass(frozen=True)
class DCertificate:
    """Rank witness for the octuple's skew matrix.

    The unitriangular matrix d satisfies d * skew = reduced, where reduced
    has hyperbolic pivots on the first 2n rows and the pure wedge block in
    the lower right 2n x 2n corner.  Hence rank = 2n + wedge_block_rank;
    full_rank records whether that reaches 2n+2.  preconditions_hold tracks
    the first two closed identities; without them the certificate is not
    issued (ok stays False) even though the factorization identity itself
    is unconditional.
    """

    ok: bool
    reason: str
    n: int
    preconditions_hold: bool
    rank: Optional[int] = None
    wedge_block_rank: Optional[int] = None
    full_rank: Optional[bool] = None
    d: Optional[Matrix] = None

    def to_jsonable(self) -> dict:
        return {"ok": self.ok, "reason": self.reason, "n": self.n,
                "preconditions_hold": self.preconditions_hold,
                "rank": self.rank, "wedge_block_rank": self.wedge_block_rank,
                "full_rank": self.full_rank}


def d_certificate(oct_: BarthOctuple) -> DCertificate:
    """Factor the skew matrix through the unitriangular reducer and read the
    rank off the wedge block.

    The factorization D * skew = [[hyperbolic rows], [0, 0, wedge block]]
    is verified entrywise; the rank is cross-checked against a direct
    computation, so a returned certificate cannot be wrong, only absent.
    """
    f = oct_.field
    n = oct_.n
    r1, r2, _ = closed_residuals(oct_)
    pre = r1.is_zero() and r2.is_zero()
    if not pre:
        return DCertificate(ok=False, n=n, preconditions_hold=False,
                            reason="first two closed identities fail")
    zero = Matrix.zeros(f, n, n)
    ident = Matrix.identity(f, n)
    d = vstack([
        hstack([ident, zero, zero, zero]),
        hstack([zero, ident, zero, zero]),
        hstack([oct_.b_mat1, -oct_.a_mat1, ident, zero]),
        hstack([oct_.b_mat2, -oct_.a_mat2, zero, ident]),
    ])
    skew = skew_of_octuple(oct_)
    w11 = wedge(oct_.a_vec1, oct_.b_vec1)
    w12 = (oct_.a_vec1 @ oct_.b_vec2.transpose()
           - oct_.b_vec1 @ oct_.a_vec2.transpose())
    w21 = (oct_.a_vec2 @ oct_.b_vec1.transpose()
           - oct_.b_vec2 @ oct_.a_vec1.transpose())
    w22 = wedge(oct_.a_vec2, oct_.b_vec2)
    expected = vstack([
        hstack([zero, ident, oct_.a_mat1, oct_.a_mat2]),
        hstack([-ident, zero, oct_.b_mat1, oct_.b_mat2]),
        hstack([zero, zero, w11, w12]),
        hstack([zero, zero, w21, w22]),
    ])
    product = d @ skew
    if product != expected:
        return DCertificate(ok=False, n=n, preconditions_hold=True,
                            reason="factorization identity failed")
    wedge_block = vstack([hstack([w11, w12]), hstack([w21, w22])])
    wedge_rank, _ = rank_kernel(wedge_block)
    rank = 2 * n + wedge_rank
    direct, _ = rank_kernel(skew)
    if direct != rank:
        return DCertificate(ok=False, n=n, preconditions_hold=True,
                            reason="rank cross-check failed")
    return DCertificate(ok=True, reason="", n=n, preconditions_hold=True,
                        rank=rank, wedge_block_rank=wedge_rank,
                        full_rank=(rank == 2 * n + 2), d=d)


# -------------------------------------------------------------- verification


def gamma_conditions(oct_: BarthOctuple, mode: str = "exact",
                     prime: Optional[int] = None) -> VerificationReport:
    """Slice membership: closed identities, full rank, fiberwise
    surjectivity, vanishing sections, and the wedge-rank open condition.

    Conditions are named "closed", "rank", "subbundle", "sections",
    "wedge-rank".  The middle two run on the canonical presentation of the
    carried net and are INDETERMINATE when the closed or rank conditions
    already failed (there is no net to present).
    """
    if mode not in ("exact", "fast"):
        raise ValueError(f"unknown mode {mode!r}")
    work = oct_
    if mode == "fast":
        p = prime if prime is not None else default_prime()
        if oct_.field == QQ:
            work = oct_.map_to_field(PrimeField(p))
        elif isinstance(oct_.field, PrimeField):
            p = oct_.field.p
        else:
            raise ValueError("fast mode expects QQ or prime-field input")
    elif oct_.field != QQ:
        raise ValueError("exact mode requires rational input")
    pass_verdict = PASS if mode == "exact" else PROBABLE

    n = work.n
    w = 2 * n + 2
    conditions = []

    residuals = closed_residuals(work)
    bad = [i + 1 for i, r in enumerate(residuals) if not r.is_zero()]
    if not bad:
        conditions.append(ConditionResult(
            "closed", pass_verdict, "all three identities hold"))
    else:
        conditions.append(ConditionResult(
            "closed", FAIL, f"identities {bad} fail", {"failing": bad}))

    net, skew = a_of_octuple(work, strict=False)
    rank, _ = rank_kernel(skew)
    if rank == w:
        conditions.append(ConditionResult(
            "rank", pass_verdict, f"skew rank {rank}", {"rank": rank}))
    else:
        conditions.append(ConditionResult(
            "rank", FAIL, f"skew rank {rank}, needs {w}",
            {"rank": rank, "required": w}))

    if net is not None and rank == w:
        pres = presentation(net)
        _, adual = monad_maps(pres)
        cert = projective_emptiness(
            minor_ideal(adual, n),
            mode="certified" if mode == "exact" else "probabilistic",
            prime=prime)
        conditions.append(subbundle_condition(cert, mode))
        h0 = section_kernel_dim(pres)
        verdict = pass_verdict if h0 == 0 else FAIL
        detail = "no global sections" if h0 == 0 else f"h0 = {h0}"
        conditions.append(ConditionResult("sections", verdict, detail,
                                          {"h0": h0}))
    else:
        blocked = "needs the closed and rank conditions"
        conditions.append(ConditionResult("subbundle", INDETERMINATE, blocked))
        conditions.append(ConditionResult("sections", INDETERMINATE, blocked))

    ra, _ = rank_kernel(wedge(work.a_vec1, work.a_vec2))
    rb, _ = rank_kernel(wedge(work.b_vec1, work.b_vec2))
    if ra == 2 and rb == 2:
        conditions.append(ConditionResult(
            "wedge-rank", pass_verdict, "both wedges have rank 2",
            {"rank_a": ra, "rank_b": rb}))
    else:
        conditions.append(ConditionResult(
            "wedge-rank", FAIL, f"wedge ranks ({ra}, {rb}), need (2, 2)",
            {"rank_a": ra, "rank_b": rb}))

    return VerificationReport("octuple", mode, _field_name(work.field),
                              tuple(conditions))


# -------------------------------------------------------------- group action


def h_action(g: Matrix, m: Matrix, oct_: BarthOctuple) -> BarthOctuple:
    """Transform by an orthogonal g and a determinant-1 2x2 m.

    g acts by congruence on the four matrices and linearly on the four
    vectors.  m touches only the vectors, mixing each a/b pair with (m00,
    m10) weights on the new a and (m01, m11) on the new b; the matrices sit
    in rows of the frame embedding that the 2x2 tail never reaches.  Wedge
    terms pick up det(m) = 1, so the closed locus is preserved, the two
    actions commute, and the pair (-1, -1) is the identity.

    Raises:
        OctupleError: g not orthogonal or det(m) != 1.
    """
    f = oct_.field
    n = oct_.n
    if g.nrows != n or g @ g.transpose() != Matrix.identity(f, n):
        raise OctupleError("first component must be orthogonal of size n")
    if m.nrows != 2 or m.ncols != 2:
        raise OctupleError("second component must be 2x2")
    det = f.sub(f.mul(m[0, 0], m[1, 1]), f.mul(m[0, 1], m[1, 0]))
    if det != f.one():
        raise OctupleError("second component must have determinant 1")
    gt = g.transpose()
    s, t = m[0, 0], m[0, 1]
    u, v = m[1, 0], m[1, 1]

    def mix(a: Matrix, b: Matrix) -> tuple[Matrix, Matrix]:
        return a.scale(s) + b.scale(u), a.scale(t) + b.scale(v)

    va1, vb1 = mix(oct_.a_vec1, oct_.b_vec1)
    va2, vb2 = mix(oct_.a_vec2, oct_.b_vec2)
    return BarthOctuple(
        g @ oct_.a_mat1 @ gt, g @ oct_.a_mat2 @ gt,
        g @ oct_.b_mat1 @ gt, g @ oct_.b_mat2 @ gt,
        g @ va1, g @ va2, g @ vb1, g @ vb2)


def octuple_group_element(g: Matrix, m: Matrix) -> GroupElementG:
    """The frame-group element matching h_action through the tilde matrix:
    tilde(h . oct) = s * tilde(oct) * blockdiag(g^-1 x 4)."""
    return embed_h_in_g(g, m)
