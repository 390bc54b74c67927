"""Generators, dimension bookkeeping, and randomized point search.

No closed-form family of verified points is available beyond the smallest
case, so the workbench manufactures candidates: sample half an octuple,
solve the closed identities for the other half (they are linear once the
sampled half is frozen), reject candidates that already fail the cheap open
conditions, and push survivors through full verification.  Everything is
driven by a counter-based RNG keyed on (seed, trial), so campaigns are
reproducible and trials could run in any order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .cohomology import cohomology_table
from .fields import QQ
from .frames import GammaPoint, GroupElementG, g_action, misp_verify
from .matrices import (Matrix, cayley_orthogonal, cayley_symplectic,
                       hamiltonian_from_symmetric, rank_kernel, solve_affine)
from .nets import QuadricNet, barth_verify, presentation
from .plane import (SigmaPoint, fiber_solve, mx_verify, psi_project,
                    sigma_h_action, symmetric_basis)
from .reports import FAIL, INDETERMINATE, PASS
from .rng import CounterRng
from .slices import (BarthOctuple, closed_residuals, d_certificate,
                     gamma_conditions, h_action, wedge)


class GenerationError(RuntimeError):
    """Retry budget exhausted while building a closed octuple."""


# ------------------------------------------------------------- dimension rows


@dataclass(frozen=True)
class DimsRow:
    """Exact dimension counts attached to one size n.

    slice_dim counts the symmetric-matrix slice coordinates, 3n(n+1).
    equation_count = C(2n-2, 2) = 2n^2 - 5n + 3 is the number of rank
    equations, lower_bound = slice_dim - equation_count = n^2 + 8n - 3, and
    expected_dim = 8n - 3; their difference is n^2, the dimension of the
    general linear group that acts with kernel +-1.  w_dim = 2n + 2 and
    h1_middle = 2n - 2 are the monad invariants, fiber_claim = 4n the
    reference fiber dimension.
    """

    n: int
    slice_dim: int
    equation_count: int
    lower_bound: int
    expected_dim: int
    w_dim: int
    h1_middle: int
    fiber_claim: int

    def to_jsonable(self) -> dict:
        return {"n": self.n, "slice_dim": self.slice_dim,
                "equation_count": self.equation_count,
                "lower_bound": self.lower_bound,
                "expected_dim": self.expected_dim, "w_dim": self.w_dim,
                "h1_middle": self.h1_middle, "fiber_claim": self.fiber_claim}


def dims_row(n: int) -> DimsRow:
    if n < 1:
        raise ValueError("n must be at least 1")
    slice_dim = 3 * n * (n + 1)
    equation_count = (2 * n - 2) * (2 * n - 3) // 2
    assert equation_count == 2 * n * n - 5 * n + 3
    lower_bound = slice_dim - equation_count
    assert lower_bound == n * n + 8 * n - 3
    expected_dim = 8 * n - 3
    assert lower_bound - expected_dim == n * n
    return DimsRow(n=n, slice_dim=slice_dim, equation_count=equation_count,
                   lower_bound=lower_bound, expected_dim=expected_dim,
                   w_dim=2 * n + 2, h1_middle=2 * n - 2, fiber_claim=4 * n)


def dims_report(n_max: int) -> list[DimsRow]:
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    return [dims_row(n) for n in range(1, n_max + 1)]


# ------------------------------------------------------------------ examples


def gen_null_correlation() -> QuadricNet:
    """The unique smallest verified net: two identity blocks, flattening to
    the standard symplectic form."""
    one = Matrix(QQ, [[1]])
    return QuadricNet(QQ, 1, 4, {"12": one, "34": one})


# ----------------------------------------------------------- random elements


def random_symmetric(rng: CounterRng, field, size: int,
                     bound: int = 3) -> Matrix:
    raw = [[rng.int_between(-bound, bound) for _ in range(size)]
           for _ in range(size)]
    return Matrix(field, [[raw[i][j] if i <= j else raw[j][i]
                           for j in range(size)] for i in range(size)])


def random_vector(rng: CounterRng, field, size: int, bound: int = 3) -> Matrix:
    return Matrix(field,
                  [[rng.int_between(-bound, bound)] for _ in range(size)])


def random_orthogonal(rng: CounterRng, size: int) -> Matrix:
    """Cayley transform of a scaled skew integer matrix; exact entries."""
    raw = [[rng.int_between(-3, 3) for _ in range(size)]
           for _ in range(size)]
    m = Matrix(QQ, raw)
    return cayley_orthogonal((m - m.transpose()).scale(QQ.of("1/7")))


def random_symplectic(rng: CounterRng, size: int) -> Matrix:
    seed = random_symmetric(rng, QQ, size).scale(QQ.of("1/9"))
    return cayley_symplectic(hamiltonian_from_symmetric(seed))


def random_sl2(rng: CounterRng) -> Matrix:
    # Scale one row of a random integer matrix by 1/det to land in SL(2).
    while True:
        a, b = rng.int_between(-4, 4), rng.int_between(-4, 4)
        c, d = rng.int_between(-4, 4), rng.int_between(-4, 4)
        det = a * d - b * c
        if det != 0:
            return Matrix(QQ, [[Fraction(a, det), Fraction(b, det)],
                               [c, d]])


def random_invertible(rng: CounterRng, field, size: int,
                      bound: int = 3) -> Matrix:
    while True:
        m = Matrix(field, [[rng.int_between(-bound, bound)
                            for _ in range(size)] for _ in range(size)])
        if rank_kernel(m)[0] == size:
            return m


# ------------------------------------------------------- closed-point solver


@dataclass(frozen=True)
class GenStats:
    """Bookkeeping for one generated octuple."""

    ansatz: str
    attempts: int
    solver_failures: int
    prefilter_rejections: int

    def to_jsonable(self) -> dict:
        return {"ansatz": self.ansatz, "attempts": self.attempts,
                "solver_failures": self.solver_failures,
                "prefilter_rejections": self.prefilter_rejections}


def _upper_entries(m: Matrix) -> list:
    return [m[i, j] for i in range(m.nrows)
            for j in range(i + 1, m.nrows)]


def _unpack_symmetric(field, n: int, chunk) -> Matrix:
    out = [[field.zero()] * n for _ in range(n)]
    k = 0
    for i in range(n):
        for j in range(i, n):
            out[i][j] = chunk[k]
            out[j][i] = chunk[k]
            k += 1
    return Matrix(field, out)


def _dense_attempt(rng: CounterRng, n: int, bound: int
                   ) -> Optional[BarthOctuple]:
    # Freeze (A1, A2, a1, a2, b1); the three closed identities are then
    # jointly linear in (B1, B2, b2): 3 * C(n, 2) equations against
    # n(n + 1) + n unknowns.  Leaving b2 among the unknowns matters: with
    # all four vectors frozen the (B1, B2) system carries a structural
    # cokernel from n = 4 on and random right sides fall outside its image.
    # (Freezing B2 and solving a square system for A2 is worse still,
    # failing the same way already at n = 3 via the common commutant.)
    basis = symmetric_basis(QQ, n)
    a_mat1 = random_symmetric(rng, QQ, n, bound)
    a_mat2 = random_symmetric(rng, QQ, n, bound)
    a1 = random_vector(rng, QQ, n, bound)
    a2 = random_vector(rng, QQ, n, bound)
    b1 = random_vector(rng, QQ, n, bound)
    k = n * (n - 1) // 2
    zero_rows = [QQ.zero()] * k

    def ad(frozen: Matrix, e: Matrix) -> list:
        return _upper_entries(frozen @ e - e @ frozen)

    columns = []
    for e in basis:
        columns.append(ad(a_mat1, e) + zero_rows + ad(a_mat2, e))
    for e in basis:
        columns.append(zero_rows + ad(a_mat2, e) + ad(a_mat1, e))
    for i in range(n):
        unit = Matrix.column(QQ, [QQ.one() if r == i else QQ.zero()
                                  for r in range(n)])
        columns.append(zero_rows + _upper_entries(wedge(a2, unit))
                       + _upper_entries(wedge(a1, unit)))
    rhs = (_upper_entries(-wedge(a1, b1))
           + zero_rows
           + _upper_entries(-wedge(a2, b1)))
    rows = [[col[r] for col in columns] for r in range(3 * k)]
    space = solve_affine(Matrix(QQ, rows), rhs)
    if space is None:
        return None
    coords = space.point([rng.int_between(-bound, bound)
                          for _ in range(space.dim)])
    half = n * (n + 1) // 2
    b_mat1 = _unpack_symmetric(QQ, n, coords[:half])
    b_mat2 = _unpack_symmetric(QQ, n, coords[half:2 * half])
    b2 = Matrix.column(QQ, coords[2 * half:])
    return BarthOctuple(a_mat1, a_mat2, b_mat1, b_mat2, a1, a2, b1, b2)


def _diagonal_attempt(rng: CounterRng, n: int, bound: int) -> BarthOctuple:
    # Diagonal matrices with a shared vector scaling: closed by
    # construction, but the vector columns are forced proportional, so the
    # full rank condition can never hold.  Kept as a labeled fallback for
    # studying the closed locus itself.
    def diag():
        return Matrix.diagonal(
            QQ, [rng.int_between(-bound, bound) for _ in range(n)])
    a1 = random_vector(rng, QQ, n, bound)
    a2 = random_vector(rng, QQ, n, bound)
    s = QQ.of(rng.nonzero_int_between(-bound, bound))
    return BarthOctuple(diag(), diag(), diag(), diag(), a1, a2,
                        a1.scale(s), a2.scale(s))


def gen_closed_octuple(n: int, seed: Union[int, CounterRng],
                       ansatz: str = "dense", max_retries: int = 200,
                       bound: int = 3) -> tuple[BarthOctuple, GenStats]:
    """Build an octuple satisfying all three closed identities exactly.

    Half the data is sampled, the other half solved for (the identities
    are linear in the unsolved half).  Candidates whose vector wedges do
    not both reach rank 2 are rejected and resampled, since no such point
    can pass the open conditions later.

    Args:
        n: block size, at least 2 (rank-2 wedges need two directions).
        seed: integer seed or an existing rng stream.
        ansatz: "dense" (generic sampling) or "diagonal" (labeled fallback,
            closed but never of full rank).
        max_retries: attempt budget before GenerationError.
        bound: coefficient bound for samples.

    Returns:
        (octuple, stats); the closed identities are asserted on the output.
    """
    if n < 2:
        raise ValueError("generation needs n >= 2")
    if ansatz not in ("dense", "diagonal"):
        raise ValueError(f"unknown ansatz {ansatz!r}")
    rng = seed if isinstance(seed, CounterRng) else CounterRng(seed, 0x0C7)
    failures = rejected = 0
    for attempt in range(1, max_retries + 1):
        if ansatz == "dense":
            oct_ = _dense_attempt(rng, n, bound)
        else:
            oct_ = _diagonal_attempt(rng, n, bound)
        if oct_ is None:
            failures += 1
            continue
        assert all(r.is_zero() for r in closed_residuals(oct_)), \
            "solver produced a non-closed octuple"
        ra, _ = rank_kernel(wedge(oct_.a_vec1, oct_.a_vec2))
        rb, _ = rank_kernel(wedge(oct_.b_vec1, oct_.b_vec2))
        if ra != 2 or rb != 2:
            rejected += 1
            continue
        stats = GenStats(ansatz=ansatz, attempts=attempt,
                         solver_failures=failures,
                         prefilter_rejections=rejected)
        return oct_, stats
    raise GenerationError(
        f"no closed octuple within {max_retries} attempts "
        f"({failures} solver failures, {rejected} rejected)")


# ------------------------------------------------------------------- search


@dataclass(frozen=True)
class SearchConfig:
    """Reproducible campaign description; equal configs give equal reports."""

    n: int
    seed: int
    trials: int
    ansatz: str = "dense"
    mode: str = "fast"
    prime: Optional[int] = None
    full_cap: int = 48

    def __post_init__(self):
        if self.ansatz not in ("dense", "diagonal"):
            raise ValueError(f"unknown ansatz {self.ansatz!r}")
        if self.mode not in ("exact", "fast"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.trials < 0:
            raise ValueError("trials must be nonnegative")

    def to_jsonable(self) -> dict:
        return {"n": self.n, "seed": self.seed, "trials": self.trials,
                "ansatz": self.ansatz, "mode": self.mode,
                "prime": self.prime, "full_cap": self.full_cap}


@dataclass(frozen=True)
class SearchHit:
    trial: int
    octuple: BarthOctuple
    report: object
    escalated: bool


@dataclass(frozen=True)
class SearchReport:
    """Outcome of a campaign: tallies plus the surviving points.

    verdict_tallies maps condition name -> verdict -> count over all
    trials (fast filtering).  Hits pass every fast condition; when the
    config asks for exact mode the first full_cap hits are re-verified
    over the rationals and marked escalated.
    """

    config: SearchConfig
    trials_run: int
    generated: int
    generation_attempts: int
    prefilter_rejections: int
    verdict_tallies: dict
    hits: tuple
    note: str = ""

    def stats_jsonable(self) -> dict:
        """Pinnable summary: everything except the point data."""
        return {"config": self.config.to_jsonable(),
                "trials_run": self.trials_run,
                "generated": self.generated,
                "generation_attempts": self.generation_attempts,
                "prefilter_rejections": self.prefilter_rejections,
                "verdict_tallies": self.verdict_tallies,
                "hit_trials": [h.trial for h in self.hits],
                "escalated": sum(1 for h in self.hits if h.escalated),
                "note": self.note}


def search_gamma_points(cfg: SearchConfig) -> SearchReport:
    """Run the generate-filter-certify loop described by the config.

    Each trial owns the rng stream (seed, trial), so the campaign is
    order-independent and reproducible.  For n = 1 no trial can succeed
    (1x1 wedges are zero) and the search reports an empty outcome without
    sampling.
    """
    if cfg.n < 2:
        return SearchReport(config=cfg, trials_run=0, generated=0,
                            generation_attempts=0, prefilter_rejections=0,
                            verdict_tallies={}, hits=(),
                            note="rank-2 wedges are impossible below n = 2")
    tallies: dict = {}
    hits = []
    generated = 0
    attempts = 0
    rejected = 0
    escalated = 0
    for trial in range(cfg.trials):
        rng = CounterRng(cfg.seed, 0x5EA2C4, trial)
        try:
            oct_, stats = gen_closed_octuple(cfg.n, rng, ansatz=cfg.ansatz)
        except GenerationError:
            continue
        generated += 1
        attempts += stats.attempts
        rejected += stats.prefilter_rejections
        report = gamma_conditions(oct_, mode="fast", prime=cfg.prime)
        for cond in report.conditions:
            per = tallies.setdefault(cond.name, {})
            per[cond.verdict] = per.get(cond.verdict, 0) + 1
        if any(c.verdict in (FAIL, INDETERMINATE) for c in report.conditions):
            continue
        if cfg.mode == "exact" and escalated < cfg.full_cap:
            report = gamma_conditions(oct_, mode="exact")
            escalated += 1
            if any(c.verdict != PASS for c in report.conditions):
                continue
            hits.append(SearchHit(trial, oct_, report, True))
        else:
            hits.append(SearchHit(trial, oct_, report, False))
    return SearchReport(config=cfg, trials_run=cfg.trials,
                        generated=generated, generation_attempts=attempts,
                        prefilter_rejections=rejected,
                        verdict_tallies=tallies, hits=tuple(hits))


# --------------------------------------------------------------- orbit tests


@dataclass(frozen=True)
class OrbitCheck:
    name: str
    matched: bool
    detail: str = ""


@dataclass(frozen=True)
class OrbitReport:
    subject: str
    seed: int
    checks: tuple

    @property
    def matched(self) -> bool:
        return all(c.matched for c in self.checks)

    def to_jsonable(self) -> dict:
        return {"subject": self.subject, "seed": self.seed,
                "matched": self.matched,
                "checks": [{"name": c.name, "matched": c.matched,
                            "detail": c.detail} for c in self.checks]}


def _verdict_list(report) -> list:
    return [(c.name, c.verdict) for c in report.conditions]


def orbit_test(obj, seed: int, mode: str = "fast",
               prime: Optional[int] = None) -> OrbitReport:
    """Move the object by a random group element and compare every verdict
    and numeric invariant the library attaches to it."""
    rng = CounterRng(seed, 0x0B17)
    if isinstance(obj, QuadricNet):
        return _orbit_net(obj, rng, seed, mode, prime)
    if isinstance(obj, BarthOctuple):
        return _orbit_octuple(obj, rng, seed, mode, prime)
    if isinstance(obj, GammaPoint):
        return _orbit_gamma(obj, rng, seed, mode, prime)
    if isinstance(obj, SigmaPoint):
        return _orbit_sigma(obj, rng, seed)
    raise TypeError(f"no orbit test for {type(obj).__name__}")


def _orbit_net(net: QuadricNet, rng: CounterRng, seed: int, mode: str,
               prime: Optional[int]) -> OrbitReport:
    g = random_invertible(rng, net.field, net.n)
    gt = g.transpose()
    moved = QuadricNet(net.field, net.n, net.ambient,
                       {key: gt @ m @ g
                        for key, m in net.blocks.items()})
    verify = mx_verify if net.ambient == 3 else barth_verify
    before = verify(net, mode=mode, prime=prime)
    after = verify(moved, mode=mode, prime=prime)
    checks = [OrbitCheck("verdicts",
                         _verdict_list(before) == _verdict_list(after))]
    w = 2 * net.n + 2
    rank_before, _ = rank_kernel(net.flatten())
    rank_after, _ = rank_kernel(moved.flatten())
    checks.append(OrbitCheck("flatten-rank", rank_before == rank_after,
                             f"{rank_before} vs {rank_after}"))
    if rank_before == w and rank_after == w:
        t0 = -net.ambient if net.ambient == 3 else -2
        table_before = cohomology_table(presentation(net), t0, 1)
        table_after = cohomology_table(presentation(moved), t0, 1)
        checks.append(OrbitCheck(
            "cohomology", table_before.grid == table_after.grid))
    return OrbitReport("net", seed, tuple(checks))


def _orbit_octuple(oct_: BarthOctuple, rng: CounterRng, seed: int, mode: str,
                   prime: Optional[int]) -> OrbitReport:
    g = random_orthogonal(rng, oct_.n)
    m = random_sl2(rng)
    moved = h_action(g, m, oct_)
    before = gamma_conditions(oct_, mode=mode, prime=prime)
    after = gamma_conditions(moved, mode=mode, prime=prime)
    checks = [OrbitCheck("verdicts",
                         _verdict_list(before) == _verdict_list(after))]
    cert_before = d_certificate(oct_)
    cert_after = d_certificate(moved)
    checks.append(OrbitCheck(
        "certificate-rank",
        (cert_before.ok, cert_before.rank) == (cert_after.ok,
                                               cert_after.rank)))
    space_before = fiber_solve(psi_project(oct_))
    space_after = fiber_solve(psi_project(moved))
    dim_before = None if space_before is None else space_before.dim
    dim_after = None if space_after is None else space_after.dim
    checks.append(OrbitCheck("fiber-dim", dim_before == dim_after,
                             f"{dim_before} vs {dim_after}"))
    return OrbitReport("octuple", seed, tuple(checks))


def _orbit_gamma(point: GammaPoint, rng: CounterRng, seed: int, mode: str,
                 prime: Optional[int]) -> OrbitReport:
    g = random_invertible(rng, point.field, point.n)
    s = random_symplectic(rng, point.w_dim)
    moved = g_action(GroupElementG(g, s), point)
    before = misp_verify(point, mode=mode, prime=prime)
    after = misp_verify(moved, mode=mode, prime=prime)
    checks = [OrbitCheck("verdicts",
                         _verdict_list(before) == _verdict_list(after))]
    return OrbitReport("gamma", seed, tuple(checks))


def _orbit_sigma(sigma: SigmaPoint, rng: CounterRng, seed: int
                 ) -> OrbitReport:
    g = random_orthogonal(rng, sigma.n)
    m = random_sl2(rng)
    moved = sigma_h_action(g, m, sigma)
    space_before = fiber_solve(sigma)
    space_after = fiber_solve(moved)
    dim_before = None if space_before is None else space_before.dim
    dim_after = None if space_after is None else space_after.dim
    checks = [OrbitCheck("fiber-dim", dim_before == dim_after,
                         f"{dim_before} vs {dim_after}"),
              OrbitCheck("closed-shape", sigma.is_closed == moved.is_closed)]
    return OrbitReport("sigma", seed, tuple(checks))
