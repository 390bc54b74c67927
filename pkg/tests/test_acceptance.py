"""Acceptance gate: nine end-to-end checks at fixed tolerances and budgets.

Each test prints one verdict line (visible with -rA or -s) and asserts both
the mathematical content and its runtime budget.  Everything is seeded, so
a run either passes forever or fails forever.  The search campaign pins its
statistics in tests/data/ on first execution; later runs must reproduce the
artifact byte for byte.
"""

import time
from math import comb
from pathlib import Path

import pytest

from monadforge.cohomology import cohomology_table, chi_middle_bundle
from monadforge.fields import QQ, PrimeField, is_prime
from monadforge.forms import Form, Ideal, minor_ideal
from monadforge.frames import std_symplectic, g_action, embed_h_in_g
from monadforge.groebner import projective_emptiness, spot_check_empty
from monadforge.matrices import Matrix, block_diag, rank_kernel, solve_affine
from monadforge.nets import (
    WrongRankError,
    barth_verify,
    monad_maps,
    presentation,
)
from monadforge.plane import (
    fiber_report,
    fiber_solve,
    mx_verify,
    pair_to_vector,
    phi_restrict,
    plane_net_of_sigma,
    psi_project,
    sigma_h_action,
)
from monadforge.reports import FAIL, PASS, PROBABLE
from monadforge.rng import CounterRng
from monadforge.serialize import dumps
from monadforge.slices import (
    a_of_octuple,
    d_certificate,
    gamma_conditions,
    gamma_of_octuple,
    h_action,
    skew_of_octuple,
    tilde_matrix,
    wedge,
)
from monadforge.workbench import (
    SearchConfig,
    dims_report,
    gen_closed_octuple,
    gen_null_correlation,
    random_orthogonal,
    random_sl2,
    search_gamma_points,
)

DATA_DIR = Path(__file__).parent / "data"


def budget(num: int, label: str, started: float, limit: float) -> None:
    elapsed = time.perf_counter() - started
    print(f"[criterion {num}] PASS {label} ({elapsed:.2f}s / {limit:.0f}s)")
    assert elapsed < limit, f"criterion {num} blew its budget: {elapsed:.2f}s"


# ---------------------------------------------------------------- criterion 1


def test_criterion_1_dimension_table():
    t0 = time.perf_counter()
    rows = dims_report(10)
    assert len(rows) == 10
    for row in rows:
        n = row.n
        assert row.slice_dim == 3 * n * (n + 1)
        assert row.equation_count == 2 * n * n - 5 * n + 3
        assert row.equation_count == comb(2 * n - 2, 2)
        assert row.lower_bound == n * n + 8 * n - 3
        assert row.lower_bound == row.slice_dim - row.equation_count
        assert row.expected_dim == 8 * n - 3
        assert row.lower_bound - row.expected_dim == n * n
        assert row.w_dim == 2 * n + 2
        assert row.h1_middle == 2 * n - 2
        assert row.fiber_claim == 4 * n
    budget(1, "dimension table n=1..10", t0, 1.0)


# ---------------------------------------------------------------- criterion 2


def test_criterion_2_null_correlation():
    t0 = time.perf_counter()
    net = gen_null_correlation()
    report = barth_verify(net, mode="exact")
    assert report.overall == PASS
    assert report.condition("rank").data["rank"] == 4
    cert = report.condition("subbundle").data["certificate"]
    assert cert.kind == "empty" and cert.exponents == (1, 1, 1, 1)
    assert report.condition("sections").data["h0"] == 0

    table = cohomology_table(presentation(net), -6, 2,
                             subbundle_certified=True)
    assert table.h(1, -2) == 0      # no middle cohomology in degree -2
    assert table.h(1, -1) == 1
    assert table.h(1, 0) == 0
    for t in range(-6, 3):
        assert table.h(2, t) == table.h(1, -4 - t)
        assert table.h(3, t) == table.h(0, -4 - t)
        assert table.euler(t) == chi_middle_bundle(1, 4, t)
    budget(2, "smallest charge full verification and twist table", t0, 1.0)


# ---------------------------------------------------------------- criterion 3


def test_criterion_3_block_identities():
    t0 = time.perf_counter()
    for n in (2, 3):
        q = std_symplectic(QQ, 2 * n + 2)
        for i in range(200):
            oct_, _ = gen_closed_octuple(n, seed=31_000 + 100 * n + i)
            tilde = tilde_matrix(oct_)
            product = tilde.transpose() @ q @ tilde
            # skew_of_octuple re-derives the block form and asserts it
            # entrywise; equality here closes the loop through the frame
            assert product == skew_of_octuple(oct_)
            ra, _ = rank_kernel(wedge(oct_.a_vec1, oct_.a_vec2))
            rb, _ = rank_kernel(wedge(oct_.b_vec1, oct_.b_vec2))
            cert = d_certificate(oct_)
            assert cert.ok and cert.preconditions_hold
            if ra == 2 and rb == 2:
                assert cert.rank == 2 * n + 2
                assert cert.full_rank is True
    budget(3, "block identities on 200 octuples per charge", t0, 30.0)


# ---------------------------------------------------------------- criterion 4


def test_criterion_4_equivariance():
    t0 = time.perf_counter()
    flips = []
    count = 0
    for n in (2, 3):
        id_n = Matrix.identity(QQ, n)
        id_2 = Matrix.identity(QQ, 2)
        pool = [gen_closed_octuple(n, seed=41_000 + 100 * n + i)[0]
                for i in range(25)]
        before = {}
        tables = {}
        for i, oct_ in enumerate(pool):
            rep = gamma_conditions(oct_, mode="exact")
            before[i] = [(c.name, c.verdict) for c in rep.conditions]
            if rep.condition("rank").verdict == PASS:
                net, _ = a_of_octuple(oct_)
                tables[i] = cohomology_table(presentation(net), -2, 1).grid
            # the minus pair acts trivially, checked once per pool element
            assert h_action(-id_n, -id_2, oct_) == oct_
        for i, oct_ in enumerate(pool):
            for j in range(4):
                rng = CounterRng(41_500, n, i, j)
                g = random_orthogonal(rng, n)
                m = random_sl2(rng)
                moved = h_action(g, m, oct_)
                count += 1
                # the two component actions commute
                assert h_action(g, id_2, h_action(id_n, m, oct_)) == moved
                assert h_action(id_n, m, h_action(g, id_2, oct_)) == moved
                # every verdict computed from the derived net is pointwise
                # invariant; the wedge ranks belong to the lift, and a
                # mixing matrix whose first column lands on the roots of
                # det(s a1 + u b1 | s a2 + u b2) collapses the moved pair.
                # Such hits must be rare, isolated to that one verdict, and
                # confirmed by the vectors themselves.
                rep = gamma_conditions(moved, mode="exact")
                after = [(c.name, c.verdict) for c in rep.conditions]
                if after != before[i]:
                    diffs = [(b, a) for b, a in zip(before[i], after)
                             if b != a]
                    assert diffs == [(("wedge-rank", PASS),
                                      ("wedge-rank", FAIL))]
                    ra, _ = rank_kernel(wedge(moved.a_vec1, moved.a_vec2))
                    rb, _ = rank_kernel(wedge(moved.b_vec1, moved.b_vec2))
                    assert min(ra, rb) == 0
                    flips.append((n, i, j))
                # explicit congruence of the derived skew matrix
                right = block_diag([g.transpose()] * 4)
                assert skew_of_octuple(moved) == (
                    right.transpose() @ skew_of_octuple(oct_) @ right)
                # twist tables are invariant on the full-rank locus
                if i in tables:
                    net, _ = a_of_octuple(moved)
                    assert cohomology_table(
                        presentation(net), -2, 1).grid == tables[i]
                # the frame embedding intertwines the two actions
                element = embed_h_in_g(g, m)
                assert g_action(element, gamma_of_octuple(oct_)).gamma == \
                    tilde_matrix(moved)
                # projection to the plane intertwines as well
                assert psi_project(moved) == \
                    sigma_h_action(g, m, psi_project(oct_))
    assert count == 200
    assert len(flips) <= 4, f"degenerate mixes are not rare: {flips}"
    print(f"[criterion 4] wedge-rank degeneracies hit by the sampler: "
          f"{len(flips)} of {count} pairs {flips}")
    budget(4, "group actions on 100 pairs per charge", t0, 60.0)


# ---------------------------------------------------------------- criterion 5


@pytest.fixture(scope="module")
def small_searches():
    configs = {
        2: SearchConfig(n=2, seed=52_002, trials=30, mode="exact",
                        prime=32003, full_cap=10),
        3: SearchConfig(n=3, seed=52_003, trials=16, mode="exact",
                        prime=32003, full_cap=6),
    }
    return {n: search_gamma_points(cfg) for n, cfg in configs.items()}


def test_criterion_5_fiber_membership(small_searches):
    t0 = time.perf_counter()
    mismatched = []
    checked = 0
    for n in (2, 3):
        report = small_searches[n]
        assert report.hits, f"search produced no verified points at n={n}"
        closed_pool = [gen_closed_octuple(n, seed=51_000 + 100 * n + i)[0]
                       for i in range(25)]
        for oct_ in [h.octuple for h in report.hits] + closed_pool:
            sigma = psi_project(oct_)
            space = fiber_solve(sigma)
            assert space is not None
            assert space.contains(pair_to_vector(oct_.a_mat1, oct_.a_mat2))
            # sampling asserts the closed identities on every recombination
            fr = fiber_report(sigma, samples=2, seed=5150)
            assert fr.consistent and fr.samples == 2
            if not fr.matches_claim:
                mismatched.append((n, fr.measured_dim, fr.claimed_dim))
            checked += 1
    assert checked >= 50
    # dimension vs the reference value 4n is recorded, not adjudicated
    print(f"[criterion 5] measured fiber dimension off the reference value "
          f"in {len(mismatched)}/{checked} cases: {sorted(set(mismatched))}")
    budget(5, "fiber membership and exact resampling", t0, 60.0)


# ---------------------------------------------------------------- criterion 6


def test_criterion_6_plane_pipeline(small_searches):
    t0 = time.perf_counter()
    # the two routes from an octuple to a plane net agree
    for n in (2, 3):
        for i in range(30):
            oct_, _ = gen_closed_octuple(n, seed=61_000 + 100 * n + i)
            net, _ = a_of_octuple(oct_)
            assert phi_restrict(net).blocks == \
                plane_net_of_sigma(psi_project(oct_)).blocks

    # twist tables on the plane: duality and additivity
    tables = 0
    for n in (2, 3):
        for i in range(6):
            oct_, _ = gen_closed_octuple(n, seed=62_000 + 100 * n + i)
            pnet = plane_net_of_sigma(psi_project(oct_))
            try:
                pres = presentation(pnet)
            except WrongRankError:
                continue                      # degenerate plane restriction
            table = cohomology_table(pres, -4, 1)
            for t in range(-4, 2):
                assert table.h(1, t) == table.h(1, -3 - t)
                assert table.h(2, t) == table.h(0, -3 - t)
                assert table.euler(t) == chi_middle_bundle(n, 3, t)
            tables += 1
    assert tables >= 6

    # plane verification of projected fully-verified points
    verified = 0
    sections_obstructed = 0
    for n in (2, 3):
        for hit in small_searches[n].hits:
            if not hit.escalated:
                continue
            pnet = plane_net_of_sigma(psi_project(hit.octuple))
            rep = mx_verify(pnet, mode="exact")
            if rep.condition("sections").verdict == PASS:
                assert rep.overall == PASS
                verified += 1
            else:
                sections_obstructed += 1
    assert verified >= 3
    print(f"[criterion 6] plane verification: {verified} passed, "
          f"{sections_obstructed} had sections and were exempt")
    budget(6, "plane restriction pipeline", t0, 30.0)


# ---------------------------------------------------------------- criterion 7


def _random_60bit_prime(rng: CounterRng) -> int:
    while True:
        candidate = rng.int_between(2 ** 59, 2 ** 60 - 1) | 1
        if is_prime(candidate):
            return candidate


def test_criterion_7_field_agreement():
    t0 = time.perf_counter()
    rng = CounterRng(0x7A9, 7)
    primes = [_random_60bit_prime(rng) for _ in range(3)]
    assert len(set(primes)) == 3
    mismatches = 0
    for _ in range(100):
        rows = rng.int_between(3, 8)
        cols = rng.int_between(3, 8)
        entries = [[rng.int_between(-9, 9) for _ in range(cols)]
                   for _ in range(rows)]
        rhs = [rng.int_between(-9, 9) for _ in range(rows)]
        rank_q, kernel_q = rank_kernel(Matrix(QQ, entries))
        space_q = solve_affine(Matrix(QQ, entries), rhs)
        for p in primes:
            fp = PrimeField(p)
            rank_p, kernel_p = rank_kernel(Matrix(fp, entries))
            space_p = solve_affine(Matrix(fp, entries), rhs)
            ok = (rank_p == rank_q and len(kernel_p) == len(kernel_q)
                  and (space_p is None) == (space_q is None))
            if ok and space_q is not None:
                ok = space_p.dim == space_q.dim
                # the rational solution reduces to a mod-p solution: its
                # denominators sit below the Hadamard bound of these small
                # integer matrices, so no 60-bit prime divides them
                reduced = [fp.of(x) for x in space_q.particular]
                lhs = [sum(r * x for r, x in zip(row, reduced)) % p
                       for row in entries]
                ok = ok and lhs == [r % p for r in rhs]
            if not ok:
                mismatches += 1
    assert mismatches == 0
    budget(7, "rational vs prime-field agreement, 100 cases x 3 primes",
           t0, 30.0)


# ---------------------------------------------------------------- criterion 8


def test_criterion_8_certificate_soundness():
    t0 = time.perf_counter()
    x = [Form.variable(QQ, 4, i) for i in range(4)]

    coordinate_ideal = Ideal(QQ, 4, tuple(x))
    cert = projective_emptiness(coordinate_ideal, mode="certified")
    assert cert.kind == "empty" and cert.exponents == (1, 1, 1, 1)
    ok, bad = spot_check_empty(coordinate_ideal, 32003, 200, seed=88)
    assert ok, f"spot check found a common zero {bad}"

    net = gen_null_correlation()
    _, adual = monad_maps(presentation(net))
    nc_minors = minor_ideal(adual, 1)
    cert = projective_emptiness(nc_minors, mode="certified")
    assert cert.kind == "empty" and cert.exponents == (1, 1, 1, 1)
    ok, bad = spot_check_empty(nc_minors, 32003, 200, seed=88)
    assert ok, f"spot check found a common zero {bad}"

    partial = Ideal(QQ, 4, (x[0], x[1], x[2]))
    cert = projective_emptiness(partial, mode="certified")
    assert cert.kind == "nonempty"
    w = cert.witness
    assert w is not None and cert.witness_prime is None
    assert all(QQ.is_zero(w[i]) for i in range(3)) and not QQ.is_zero(w[3])

    # a charge-2 minor ideal certified within budget, then spot-checked
    oct_, _ = gen_closed_octuple(2, seed=88_002)
    net2, _ = a_of_octuple(oct_)
    _, adual2 = monad_maps(presentation(net2))
    minors2 = minor_ideal(adual2, 2)
    cert = projective_emptiness(minors2, mode="certified")
    assert cert.decisive
    if cert.kind == "empty":
        assert cert.exponents is not None
        assert all(e >= 1 for e in cert.exponents)
        ok, bad = spot_check_empty(minors2, 32003, 200, seed=88)
        assert ok, f"spot check found a common zero {bad}"
    budget(8, "emptiness certificates and spot checks", t0, 60.0)


# ---------------------------------------------------------------- criterion 9


def test_criterion_9_search_campaign():
    t0 = time.perf_counter()
    cfg = SearchConfig(n=2, seed=20_260_401, trials=10_000, ansatz="dense",
                       mode="exact", prime=32003, full_cap=48)
    report = search_gamma_points(cfg)
    assert report.trials_run == cfg.trials
    assert report.generated == cfg.trials

    # the fast filter saw every generated octuple clear the closed check
    closed_tally = report.verdict_tallies["closed"]
    assert closed_tally == {"PROBABLE": report.generated}

    # exact closed identities, re-checked on a deterministic sample by
    # replaying the per-trial rng stream the campaign used
    for trial in range(0, cfg.trials, 100):
        rng = CounterRng(cfg.seed, 0x5EA2C4, trial)
        oct_, _ = gen_closed_octuple(cfg.n, rng, ansatz=cfg.ansatz)
        rep = gamma_conditions(oct_, mode="exact")
        assert rep.condition("closed").verdict == PASS

    # prefilter statistics are part of the report
    assert report.generation_attempts >= \
        report.generated + report.prefilter_rejections
    for name in ("rank", "subbundle", "sections", "wedge-rank"):
        assert sum(report.verdict_tallies[name].values()) == report.generated

    # escalated hits were re-verified over the rationals and all passed
    escalated = [h for h in report.hits if h.escalated]
    assert 0 < len(escalated) <= cfg.full_cap
    assert all(h.report.overall == PASS for h in escalated)
    assert all(h.report.overall == PROBABLE
               for h in report.hits if not h.escalated)

    # the campaign statistics are a regression-pinned artifact
    stats = dumps(report.stats_jsonable())
    artifact = DATA_DIR / "search_n2_stats.json"
    if artifact.exists():
        assert artifact.read_text() == stats, \
            "campaign statistics drifted from the pinned artifact"
        pinned = "matched the pinned artifact"
    else:
        DATA_DIR.mkdir(exist_ok=True)
        artifact.write_text(stats)
        pinned = "artifact pinned on first run"

    # determinism: an independent smaller campaign reproduces itself
    small = SearchConfig(n=2, seed=99_001, trials=150, mode="fast",
                         prime=32003)
    first = search_gamma_points(small).stats_jsonable()
    second = search_gamma_points(small).stats_jsonable()
    assert dumps(first) == dumps(second)

    print(f"[criterion 9] {len(report.hits)} hits / {cfg.trials} trials, "
          f"{report.prefilter_rejections} prefilter rejections, {pinned}")
    budget(9, "ten-thousand-trial campaign", t0, 600.0)
