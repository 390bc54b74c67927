"""Cohomology of the monad's middle bundle, twist by twist.

For a presentation with maps a (source n, target 2n+2) and adual (the skew
adjoint), multiplying by the coordinate linear forms gives section maps

    M1(t): H (x) S_{t-1}  ->  W (x) S_t
    M2(t): W (x) S_t      ->  H-dual (x) S_{t+1}

and the twist-t cohomology of the middle bundle E is read off as

    h0(t) = dim ker M2(t) - rank M1(t-1)
    h1(t) = dim coker M2(t)

because line bundles on the ambient space have no intermediate cohomology in
the degrees that would otherwise interfere.  One exception: on the plane the
h1 formula needs t >= -1 (twists below that pick up second cohomology of the
left-hand term), so low twists come from self-duality h1(t) = h1(-3-t)
instead.  Upper rows always come from duality: the bundle carries a
symplectic isomorphism onto its dual.

Every finished table is cross-checked against Euler characteristic
additivity; a violation raises rather than ships a wrong table.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .forms import LinearFormMatrix, monomials_of_degree
from .matrices import Matrix, rank_kernel
from .nets import NetPresentation, monad_maps
from .rng import CounterRng


class CohomologyError(ValueError):
    """Inconsistent table or resource overflow."""


def dim_sections(ambient: int, t: int) -> int:
    """Dimension of the degree-t piece of the coordinate ring (0 for t < 0)."""
    if t < 0:
        return 0
    return comb(t + ambient - 1, ambient - 1)


def chi_line_bundle(ambient: int, t: int) -> int:
    """Euler characteristic of O(t): the binomial polynomial evaluated at any
    integer, negative twists included (this is not dim_sections)."""
    if ambient == 4:
        return (t + 3) * (t + 2) * (t + 1) // 6
    if ambient == 3:
        return (t + 2) * (t + 1) // 2
    raise CohomologyError(f"ambient dimension {ambient} unsupported")


def chi_middle_bundle(n: int, ambient: int, t: int) -> int:
    """Euler characteristic of E(t) forced by additivity over the monad."""
    return ((2 * n + 2) * chi_line_bundle(ambient, t)
            - n * chi_line_bundle(ambient, t - 1)
            - n * chi_line_bundle(ambient, t + 1))


def section_map(lfm: LinearFormMatrix, t: int) -> Matrix:
    """Multiplication matrix source (x) S_t -> target (x) S_{t+1}.

    Basis order is component-major: index = component * len(monomials) +
    monomial position, monomials in descending graded reverse lex.
    """
    f = lfm.field
    src_monos = monomials_of_degree(lfm.nvars, t)
    dst_monos = monomials_of_degree(lfm.nvars, t + 1)
    dst_index = {m: i for i, m in enumerate(dst_monos)}
    nrows = lfm.nrows * len(dst_monos)
    ncols = lfm.ncols * len(src_monos)
    rows = [[f.zero()] * ncols for _ in range(nrows)]
    for v in range(lfm.nvars):
        coeff = lfm.coeffs[v]
        for mi, mono in enumerate(src_monos):
            shifted = tuple(e + (1 if w == v else 0)
                            for w, e in enumerate(mono))
            di = dst_index[shifted]
            for k in range(lfm.ncols):
                col = k * len(src_monos) + mi
                for h in range(lfm.nrows):
                    val = coeff[h, k]
                    if not f.is_zero(val):
                        row = h * len(dst_monos) + di
                        rows[row][col] = f.add(rows[row][col], val)
    return Matrix(f, rows)


@dataclass(frozen=True)
class CohomologyTable:
    """Grid of h^i(E(t)) over a twist window.

    grid[i][t - t_min] holds h^i(E(t)), i running to ambient - 1.
    subbundle_assumed records whether the fiberwise-surjectivity hypothesis
    was taken on trust rather than certified by the caller.
    """

    n: int
    ambient: int
    t_min: int
    t_max: int
    grid: tuple[tuple[int, ...], ...]
    subbundle_assumed: bool = True

    def h(self, i: int, t: int) -> int:
        if not 0 <= i < self.ambient:
            raise CohomologyError(f"no h^{i} on this ambient space")
        if not self.t_min <= t <= self.t_max:
            raise CohomologyError(f"twist {t} outside [{self.t_min}, {self.t_max}]")
        return self.grid[i][t - self.t_min]

    def euler(self, t: int) -> int:
        return sum((-1) ** i * self.h(i, t) for i in range(self.ambient))

    def to_jsonable(self) -> dict:
        return {"n": self.n, "ambient": self.ambient,
                "t_min": self.t_min, "t_max": self.t_max,
                "h": [list(row) for row in self.grid],
                "subbundle_assumed": self.subbundle_assumed}


class _TwistCalculator:
    """Memoized h0/h1 at arbitrary twists for one presentation."""

    def __init__(self, pres: NetPresentation, max_cells: int):
        self.n = pres.net.n
        self.ambient = pres.net.ambient
        self.w_dim = pres.w_dim
        self.a, self.adual = monad_maps(pres)
        self.max_cells = max_cells
        self._rank_a: dict[int, int] = {}
        self._rank_adual: dict[int, int] = {}

    def _rank(self, lfm: LinearFormMatrix, t: int, cache: dict[int, int]) -> int:
        if t in cache:
            return cache[t]
        cells = (lfm.nrows * dim_sections(self.ambient, t + 1)
                 * lfm.ncols * dim_sections(self.ambient, t))
        if cells > self.max_cells:
            raise CohomologyError(
                f"section map at twist {t} exceeds the cell budget")
        rank, _ = rank_kernel(section_map(lfm, t))
        cache[t] = rank
        return rank

    def h0(self, t: int) -> int:
        ker = (self.w_dim * dim_sections(self.ambient, t)
               - self._rank(self.adual, t, self._rank_adual))
        return ker - self._rank(self.a, t - 1, self._rank_a)

    def h1(self, t: int) -> int:
        if self.ambient == 3 and t <= -2:
            # The direct cokernel formula breaks below t = -1 on the plane;
            # self-duality supplies the value instead.
            return self.h1(-3 - t)
        return (self.n * dim_sections(self.ambient, t + 1)
                - self._rank(self.adual, t, self._rank_adual))


def cohomology_table(pres: NetPresentation, t_min: int, t_max: int,
                     subbundle_certified: bool = False,
                     max_cells: int = 2_000_000) -> CohomologyTable:
    """Cohomology grid of the middle bundle over [t_min, t_max].

    Args:
        pres: net presentation (exact or prime-field).
        subbundle_certified: set when fiberwise surjectivity has been
            verified; recorded in the table, not re-checked here.
        max_cells: ceiling on section-map size, guarding huge twists.

    Raises:
        CohomologyError: twist window malformed, resource cap exceeded, or
            the finished grid violates Euler characteristic additivity
            (which signals corrupted input).
    """
    if t_min > t_max:
        raise CohomologyError("empty twist window")
    calc = _TwistCalculator(pres, max_cells)
    n, ambient = calc.n, calc.ambient
    window = range(t_min, t_max + 1)
    dual = -ambient  # Serre twist: -4 on space, -3 on plane
    h0_row = [calc.h0(t) for t in window]
    h1_row = [calc.h1(t) for t in window]
    if ambient == 4:
        h2_row = [calc.h1(dual - t) for t in window]
        h3_row = [calc.h0(dual - t) for t in window]
        grid = (tuple(h0_row), tuple(h1_row), tuple(h2_row), tuple(h3_row))
    else:
        h2_row = [calc.h0(dual - t) for t in window]
        grid = (tuple(h0_row), tuple(h1_row), tuple(h2_row))
    table = CohomologyTable(n, ambient, t_min, t_max, grid,
                            subbundle_assumed=not subbundle_certified)
    for t in window:
        expected = chi_middle_bundle(n, ambient, t)
        if table.euler(t) != expected:
            raise CohomologyError(
                f"Euler characteristic mismatch at twist {t}: "
                f"{table.euler(t)} != {expected}")
    return table


# ------------------------------------------------------------ line behavior


def line_splitting(pres: NetPresentation, p_point, q_point) -> int:
    """Splitting degree d of the middle bundle on the line through two
    points: the restriction is O(d) + O(-d), and d = 0 exactly on
    non-jumping lines.

    The connecting pairing of the restricted monad is adual(P) * a(Q); its
    corank in H is d.  The value does not depend on the chosen points of the
    line because the composite at a single point vanishes.

    Raises:
        CohomologyError: coincident (proportional) points.
    """
    f = pres.net.field
    p_vec = [f.of(x) for x in p_point]
    q_vec = [f.of(x) for x in q_point]
    if len(p_vec) != pres.net.ambient or len(q_vec) != pres.net.ambient:
        raise CohomologyError("points must match the ambient dimension")
    if _proportional(f, p_vec, q_vec):
        raise CohomologyError("points are proportional: no line through them")
    a, adual = monad_maps(pres)
    delta = adual.eval_at(p_vec) @ a.eval_at(q_vec)
    rank, _ = rank_kernel(delta)
    return pres.net.n - rank


def _proportional(f, u, v) -> bool:
    if all(f.is_zero(x) for x in u) or all(f.is_zero(x) for x in v):
        return True
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            cross = f.sub(f.mul(u[i], v[j]), f.mul(u[j], v[i]))
            if not f.is_zero(cross):
                return False
    return True


def line_statistics(pres: NetPresentation, samples: int, seed: int
                    ) -> dict[int, int]:
    """Histogram of splitting degrees over random lines.

    Sampling happens in whatever field the presentation lives in; over the
    rationals the coordinates are small random integers.
    """
    f = pres.net.field
    ambient = pres.net.ambient
    rng = CounterRng(seed, 0x11E5)
    histogram: dict[int, int] = {}
    drawn = 0
    while drawn < samples:
        p_vec = [rng.int_between(-30, 30) for _ in range(ambient)]
        q_vec = [rng.int_between(-30, 30) for _ in range(ambient)]
        pf = [f.of(x) for x in p_vec]
        qf = [f.of(x) for x in q_vec]
        if _proportional(f, pf, qf):
            continue
        d = line_splitting(pres, pf, qf)
        histogram[d] = histogram.get(d, 0) + 1
        drawn += 1
    return histogram
