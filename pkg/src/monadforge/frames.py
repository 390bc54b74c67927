"""Framed monad points and the product group acting on them.

A framed point is a (2n+2) x (ambient*n) matrix gamma, read as a map from
the tensor space into a fixed symplectic space W carrying the standard form
Q.  Pulling Q back along gamma gives the skew matrix a_of_gamma(gamma) =
gamma^T Q gamma; when that matrix is the flattening of a net, gamma frames
the net's quotient presentation.

The group is GL(n) x Sp(W).  Its action is fixed as

    (g, s) . gamma = s * gamma * blockdiag(g^-1, ..., g^-1),

one g^-1 per ambient coordinate, which transports a_of_gamma by blockwise
g^-1-congruence and leaves every verification verdict unchanged.  The pair
(-1, -1) acts trivially; tests pin that convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .fields import PrimeField, QQ, default_prime
from .forms import LinearFormMatrix, minor_ideal
from .groebner import projective_emptiness
from .matrices import (Matrix, block_diag, hstack, inverse, rank_kernel,
                       std_symplectic, symplectic_framing, vstack)
from .nets import (NetPresentation, QuadricNet, decompose_pr2,
                   subbundle_condition)
from .reports import (FAIL, PASS, PROBABLE, ConditionResult,
                      VerificationReport)


class FrameError(ValueError):
    """Malformed framed point or group element."""


@dataclass(frozen=True)
class GammaPoint:
    """A framed monad point over the standard symplectic space."""

    n: int
    ambient: int
    gamma: Matrix

    def __post_init__(self):
        if self.n < 1 or self.ambient not in (3, 4):
            raise FrameError("bad charge or ambient dimension")
        w = 2 * self.n + 2
        if self.gamma.nrows != w or self.gamma.ncols != self.ambient * self.n:
            raise FrameError(
                f"gamma must be {w} x {self.ambient * self.n}, "
                f"got {self.gamma.nrows} x {self.gamma.ncols}")

    @property
    def field(self):
        return self.gamma.field

    @property
    def w_dim(self) -> int:
        return 2 * self.n + 2

    def q_form(self) -> Matrix:
        return std_symplectic(self.field, self.w_dim)

    def column_block(self, i: int) -> Matrix:
        """Columns for the i-th ambient coordinate (1-based)."""
        return self.gamma.block(0, (i - 1) * self.n, self.w_dim, self.n)

    def map_to_field(self, field) -> "GammaPoint":
        return GammaPoint(self.n, self.ambient, self.gamma.map_to_field(field))


def a_of_gamma(point: GammaPoint) -> Matrix:
    """Pullback gamma^T Q gamma of the standard form; always skew."""
    result = point.gamma.transpose() @ point.q_form() @ point.gamma
    assert result.is_skew(), "pullback of a skew form must be skew"
    return result


def gamma_maps(point: GammaPoint) -> tuple[LinearFormMatrix, LinearFormMatrix]:
    """Monad maps in gamma's own frame: alpha(x) assembles the column
    blocks, its adjoint is alpha^T Q^T.  No presentation of the net is
    needed, so these exist for every gamma."""
    f = point.field
    blocks = [point.column_block(i) for i in range(1, point.ambient + 1)]
    alpha = LinearFormMatrix(f, point.ambient, blocks)
    qt = point.q_form().transpose()
    alpha_dual = LinearFormMatrix(f, point.ambient,
                                  [b.transpose() @ qt for b in blocks])
    return alpha, alpha_dual


def gamma_to_net(point: GammaPoint) -> QuadricNet:
    """The net whose flattening is a_of_gamma.  Requires the composition
    condition (vanishing complementary part); raises FrameError otherwise."""
    flat = a_of_gamma(point)
    net, pr2 = decompose_pr2(flat, point.n, point.ambient)
    if not pr2.is_zero():
        raise FrameError("gamma does not satisfy the composition condition")
    return net


def misp_verify(point: GammaPoint, mode: str = "exact",
                prime: Optional[int] = None) -> VerificationReport:
    """Membership check for a framed point: full rank of the pullback,
    vanishing composition, fiberwise surjectivity of the adjoint, and
    vanishing sections.

    Conditions are named "rank", "composition", "subbundle", "sections".
    The last is forced by the first (the section count is the corank of
    gamma) but is computed independently anyway.
    """
    if mode not in ("exact", "fast"):
        raise ValueError(f"unknown mode {mode!r}")
    work = point
    if mode == "fast":
        p = prime if prime is not None else default_prime()
        if point.field == QQ:
            work = point.map_to_field(PrimeField(p))
        elif isinstance(point.field, PrimeField):
            p = point.field.p
        else:
            raise ValueError("fast mode expects QQ or prime-field input")
    elif point.field != QQ:
        raise ValueError("exact mode requires rational input")
    pass_verdict = PASS if mode == "exact" else PROBABLE

    w = work.w_dim
    conditions = []

    flat = a_of_gamma(work)
    rank_a, _ = rank_kernel(flat)
    if rank_a == w:
        conditions.append(ConditionResult(
            "rank", pass_verdict, f"pullback rank {rank_a}", {"rank": rank_a}))
    else:
        conditions.append(ConditionResult(
            "rank", FAIL, f"pullback rank {rank_a}, needs {w}",
            {"rank": rank_a, "required": w}))

    _, pr2 = decompose_pr2(flat, work.n, work.ambient)
    if pr2.is_zero():
        conditions.append(ConditionResult(
            "composition", pass_verdict, "monad composition vanishes"))
    else:
        nonzero = sum(1 for row in pr2.rows
                      for x in row if not work.field.is_zero(x))
        conditions.append(ConditionResult(
            "composition", FAIL,
            f"complementary part has {nonzero} nonzero entries",
            {"nonzero_entries": nonzero}))

    _, alpha_dual = gamma_maps(work)
    minors = minor_ideal(alpha_dual, work.n)
    cert = projective_emptiness(
        minors, mode="certified" if mode == "exact" else "probabilistic",
        prime=prime)
    conditions.append(subbundle_condition(cert, mode))

    rank_g, _ = rank_kernel(work.gamma)
    h0 = w - rank_g
    if h0 == 0:
        conditions.append(ConditionResult(
            "sections", pass_verdict, "no global sections", {"h0": 0}))
    else:
        conditions.append(ConditionResult(
            "sections", FAIL, f"h0 = {h0}", {"h0": h0}))

    field_name = "QQ" if work.field == QQ else f"GF({work.field.p})"
    return VerificationReport("gamma", mode, field_name, tuple(conditions))


def lift_from_net(pres: NetPresentation) -> GammaPoint:
    """Frame a presentation: gamma = psi^-1 c for the canonical symplectic
    framing psi of the induced form.  Every lift pulls the standard form
    back to the original flattened net; asserted on each call."""
    psi = symplectic_framing(pres.q_w)
    gamma = inverse(psi) @ pres.c
    point = GammaPoint(pres.net.n, pres.net.ambient, gamma)
    assert a_of_gamma(point) == pres.net.flatten(), "lift lost the net"
    return point


# ------------------------------------------------------------- group action


@dataclass(frozen=True)
class GroupElementG:
    """A pair (g, s) with g invertible on H and s symplectic on W."""

    g: Matrix
    s: Matrix

    def __post_init__(self):
        if not self.g.is_square() or not self.s.is_square():
            raise FrameError("group element blocks must be square")
        q = std_symplectic(self.s.field, self.s.nrows)
        if self.s.transpose() @ q @ self.s != q:
            raise FrameError("second component is not symplectic")
        # Invertibility of g is checked here once; actions reuse it.
        rank, _ = rank_kernel(self.g)
        if rank != self.g.nrows:
            raise FrameError("first component is singular")


def g_action(element: GroupElementG, point: GammaPoint) -> GammaPoint:
    """(g, s) . gamma = s gamma blockdiag(g^-1 per coordinate)."""
    n, amb = point.n, point.ambient
    if element.g.nrows != n or element.s.nrows != point.w_dim:
        raise FrameError("group element sizes do not match the point")
    g_inv = inverse(element.g)
    right = block_diag([g_inv] * amb)
    return GammaPoint(n, amb, element.s @ point.gamma @ right)


def transported_net_flatten(element: GroupElementG, point: GammaPoint) -> Matrix:
    """Blockwise g^-1-congruence of a_of_gamma: the predicted pullback of
    the transported point, kept separate so tests can compare both paths."""
    flat = a_of_gamma(point)
    g_inv = inverse(element.g)
    git = g_inv.transpose()
    n, amb = point.n, point.ambient
    return vstack([hstack([git @ flat.block(i * n, j * n, n, n) @ g_inv
                           for j in range(amb)]) for i in range(amb)])


def embed_h_in_g(g: Matrix, m: Matrix) -> GroupElementG:
    """Embed an orthogonal g and a unimodular 2x2 m into the product group.

    The symplectic component is blockdiag(g, g, tail) where the tail swaps
    the roles of the off-diagonal entries of m; that transposition is what
    makes the embedding intertwine the slice action with the frame action.

    Raises:
        FrameError: g not orthogonal or det(m) != 1.
    """
    f = g.field
    n = g.nrows
    if g @ g.transpose() != Matrix.identity(f, n):
        raise FrameError("first component must be orthogonal")
    if m.nrows != 2 or m.ncols != 2:
        raise FrameError("second component must be 2x2")
    det = f.sub(f.mul(m[0, 0], m[1, 1]), f.mul(m[0, 1], m[1, 0]))
    if det != f.one():
        raise FrameError("second component must have determinant 1")
    tail = Matrix(f, [[m[0, 0], m[1, 0]], [m[0, 1], m[1, 1]]])
    s = block_diag([g, g, tail])
    q = std_symplectic(f, 2 * n + 2)
    assert s.transpose() @ q @ s == q, "embedding left the symplectic group"
    return GroupElementG(g, s)
