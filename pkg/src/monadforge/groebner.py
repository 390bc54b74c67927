"""Buchberger engine and projective emptiness certificates.

Everything is graded reverse lexicographic with x1 > x2 > ... > xn.  The
engine is deterministic end to end: generators are interreduced up front,
S-pairs are processed in (lcm, i, j) order, reducers are chosen first-match
in basis order, and the final basis is reduced, monic and sorted.  Identical
inputs give identical bases over any field.

Emptiness of the projective zero locus of a homogeneous ideal is decided from
the leading-term staircase: the locus is empty over the algebraic closure iff
every variable has a pure power inside the leading-term ideal, in which case
the certificate records, per variable, an exponent d with NF(x_i^d) = 0.
Nonempty verdicts come with a witness point when the stratified search finds
one: coordinate points first, then exact roots on two-variable strata, then
random rational and mod-p lines on bigger strata.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional, Sequence

from .fields import PrimeField, QQ, default_prime
from .forms import Form, Ideal, drl_key, monomials_of_degree
from .matrices import Matrix, solve_affine
from .rng import CounterRng, digest_lane

# Hard ceilings; hitting one yields an INDETERMINATE certificate upstream.
MAX_BASIS = 5000
MAX_PAIRS = 200_000
MAX_STAIRCASE_DEGREE = 200


class ResourceCapError(RuntimeError):
    """The Buchberger run exceeded a configured cap."""


# ------------------------------------------------------------------ reduction


def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _exp_sub(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def _exp_lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(max(x, y) for x, y in zip(a, b))


def normal_form(f: Form, basis: Sequence[Form]) -> Form:
    """Full remainder of f modulo the basis (every term reduced).

    The reducer for a term is the first basis element in list order whose
    leading monomial divides it, so remainders are reproducible for a fixed
    basis ordering.  normal_form(normal_form(f, G), G) == normal_form(f, G).

    Terms accumulate in a plain dict; rebuilding a Form per reduction step
    made this quadratic in the term count.
    """
    field = f.field
    leads = [g.leading() for g in basis]
    work = dict(f.terms)
    remainder: dict = {}
    while work:
        mono = max(work, key=drl_key)
        coef = work.pop(mono)
        reducer = None
        for g, (g_mono, g_coef) in zip(basis, leads):
            if _divides(g_mono, mono):
                reducer = (g, g_mono, g_coef)
                break
        if reducer is None:
            remainder[mono] = coef
            continue
        g, g_mono, g_coef = reducer
        factor = field.div(coef, g_coef)
        shift = _exp_sub(mono, g_mono)
        for exps, c in g.terms.items():
            if exps == g_mono:
                continue  # cancels the popped head exactly
            key = tuple(a + b for a, b in zip(exps, shift))
            acc = field.sub(work.get(key, field.zero()), field.mul(factor, c))
            if field.is_zero(acc):
                work.pop(key, None)
            else:
                work[key] = acc
    return Form(field, f.nvars, remainder)


def s_poly(f: Form, g: Form) -> Form:
    f_mono, f_coef = f.leading()
    g_mono, g_coef = g.leading()
    lcm = _exp_lcm(f_mono, g_mono)
    field = f.field
    left = f.mul_monomial(_exp_sub(lcm, f_mono), field.inv(f_coef))
    right = g.mul_monomial(_exp_sub(lcm, g_mono), field.inv(g_coef))
    return left - right


def interreduce(polys: Sequence[Form]) -> list[Form]:
    """Monic mutual reduction; for equal-degree homogeneous input this is
    essentially row reduction of the coefficient matrix and does most of the
    work before any S-pair is formed."""
    basis = sorted((p.monic() for p in polys if not p.is_zero()),
                   key=lambda p: drl_key(p.leading()[0]))
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            rest = basis[:i] + basis[i + 1:]
            reduced = normal_form(basis[i], rest)
            if reduced != basis[i]:
                changed = True
                if reduced.is_zero():
                    basis.pop(i)
                else:
                    basis[i] = reduced.monic()
                    basis.sort(key=lambda p: drl_key(p.leading()[0]))
                break
    return basis


def groebner_basis(gens: Sequence[Form], *, max_basis: int = MAX_BASIS,
                   max_pairs: int = MAX_PAIRS) -> list[Form]:
    """Reduced Groebner basis of the ideal generated by gens.

    Args:
        gens: forms over one field; zero generators are ignored.
        max_basis / max_pairs: resource ceilings, raising ResourceCapError.

    Returns:
        Monic reduced basis, sorted by descending leading monomial.
    """
    basis = interreduce(gens)
    if not basis:
        return []
    field = basis[0].field
    nvars = basis[0].nvars

    heap: list = []
    pending: set[frozenset] = set()
    pairs_seen = 0

    def push_pair(i: int, j: int):
        nonlocal pairs_seen
        pairs_seen += 1
        if pairs_seen > max_pairs:
            raise ResourceCapError(f"S-pair budget {max_pairs} exhausted")
        lcm = _exp_lcm(basis[i].leading()[0], basis[j].leading()[0])
        heapq.heappush(heap, (drl_key(lcm), i, j))
        pending.add(frozenset((i, j)))

    for j in range(len(basis)):
        for i in range(j):
            push_pair(i, j)

    while heap:
        _, i, j = heapq.heappop(heap)
        key = frozenset((i, j))
        if key not in pending:
            continue
        pending.discard(key)
        lt_i = basis[i].leading()[0]
        lt_j = basis[j].leading()[0]
        lcm = _exp_lcm(lt_i, lt_j)
        # Buchberger 1: disjoint leading supports reduce to zero.
        if lcm == tuple(a + b for a, b in zip(lt_i, lt_j)):
            continue
        # Buchberger 2 (chain): some k divides the lcm and both flanking
        # pairs are already settled.
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if (_divides(basis[k].leading()[0], lcm)
                    and frozenset((i, k)) not in pending
                    and frozenset((j, k)) not in pending):
                skip = True
                break
        if skip:
            continue
        remainder = normal_form(s_poly(basis[i], basis[j]), basis)
        if remainder.is_zero():
            continue
        basis.append(remainder.monic())
        if len(basis) > max_basis:
            raise ResourceCapError(f"basis size cap {max_basis} exhausted")
        new = len(basis) - 1
        for k in range(new):
            push_pair(k, new)

    return _reduce_basis(basis, field, nvars)


def _reduce_basis(basis: list[Form], field, nvars: int) -> list[Form]:
    # Minimalize: drop any element whose leading monomial is divisible by
    # another kept element's.
    by_lead = sorted(basis, key=lambda p: drl_key(p.leading()[0]))
    minimal: list[Form] = []
    for p in by_lead:
        mono = p.leading()[0]
        if any(_divides(q.leading()[0], mono) for q in minimal):
            continue
        minimal.append(p)
    # Tail-reduce each element against the others.
    reduced = []
    for i, p in enumerate(minimal):
        rest = minimal[:i] + minimal[i + 1:]
        h = normal_form(p, rest)
        reduced.append(h.monic())
    reduced.sort(key=lambda p: drl_key(p.leading()[0]), reverse=True)
    return reduced


def is_groebner_basis(basis: Sequence[Form]) -> bool:
    """Direct Buchberger criterion check; used by tests, not the hot path."""
    for j in range(len(basis)):
        for i in range(j):
            if not normal_form(s_poly(basis[i], basis[j]), basis).is_zero():
                return False
    return True


# ----------------------------------------------------------------- staircase


def pure_power_degrees(basis: Sequence[Form], nvars: int) -> Optional[tuple[int, ...]]:
    """Per-variable k with x_i^k a leading monomial, or None if some variable
    has no pure power in the leading-term ideal (locus nonempty over the
    algebraic closure)."""
    if any(sum(p.leading()[0]) == 0 for p in basis):
        return (0,) * nvars  # the unit ideal
    best: list[Optional[int]] = [None] * nvars
    for p in basis:
        mono = p.leading()[0]
        support = [i for i, e in enumerate(mono) if e]
        if len(support) == 1:
            i = support[0]
            if best[i] is None or mono[i] < best[i]:
                best[i] = mono[i]
    if any(b is None for b in best):
        return None
    return tuple(best)  # type: ignore[arg-type]


def max_standard_degree(basis: Sequence[Form], nvars: int,
                        cap: int = MAX_STAIRCASE_DEGREE) -> int:
    """Largest degree carrying a monomial outside the leading-term ideal.

    Only meaningful when the staircase is finite; stops with an error at the
    cap otherwise.
    """
    leads = [p.leading()[0] for p in basis]
    last_occupied = -1
    for d in range(cap + 1):
        occupied = any(not any(_divides(lt, mono) for lt in leads)
                       for mono in monomials_of_degree(nvars, d))
        if occupied:
            last_occupied = d
        else:
            return last_occupied
    raise ResourceCapError(f"staircase did not close below degree {cap}")


# ---------------------------------------------------------------- certificates


@dataclass(frozen=True)
class EmptinessCertificate:
    """Outcome of a projective emptiness decision.

    kind:
        "empty"             every variable power lands in the ideal
        "nonempty"          exact rational witness point in hand
        "probable-nonempty" staircase is infinite or mod-p evidence only
        "indeterminate"     resource cap hit before a decision
    mode: "certified" (rationals) or "probabilistic" (single prime).
    exponents: for "empty", per-variable d_i with NF(x_i^d_i) == 0.
    witness: projective point (field scalars), when one was found.
    witness_prime: None for a rational witness, else the prime it lives in.
    """

    kind: str
    mode: str
    detail: str
    exponents: Optional[tuple[int, ...]] = None
    witness: Optional[tuple] = None
    witness_prime: Optional[int] = None
    prime: Optional[int] = None
    basis_size: Optional[int] = None

    @property
    def decisive(self) -> bool:
        return self.kind in ("empty", "nonempty")


def projective_emptiness(ideal: Ideal, mode: str = "certified",
                         prime: Optional[int] = None,
                         line_tries: int = 8,
                         max_basis: int = MAX_BASIS,
                         max_pairs: int = MAX_PAIRS) -> EmptinessCertificate:
    """Decide whether the projective zero locus of a homogeneous ideal is empty.

    Args:
        ideal: homogeneous generators over QQ (certified mode) or any field
            (probabilistic mode reduces QQ input mod the working prime).
        mode: "certified" runs over the rationals and its EMPTY verdict is a
            proof; "probabilistic" runs mod one prime and EMPTY only means
            empty in that reduction.
        prime: overrides the working prime in probabilistic mode.
        line_tries: random line slices per stratum during witness search.

    Returns:
        EmptinessCertificate; never raises on resource exhaustion (kind
        "indeterminate" instead).
    """
    if mode not in ("certified", "probabilistic"):
        raise ValueError(f"unknown mode {mode!r}")
    work = ideal
    used_prime = None
    if mode == "probabilistic":
        used_prime = prime if prime is not None else default_prime()
        if ideal.field == QQ:
            work = ideal.map_to_field(PrimeField(used_prime))
        elif isinstance(ideal.field, PrimeField):
            used_prime = ideal.field.p
        else:
            raise ValueError("probabilistic mode expects QQ or prime field input")
    elif ideal.field != QQ:
        raise ValueError("certified mode requires rational generators")

    gens = work.nonzero_gens()
    nvars = work.nvars
    if not gens:
        field = work.field
        witness = tuple(field.one() if i == 0 else field.zero()
                        for i in range(nvars))
        return EmptinessCertificate(
            kind="nonempty" if mode == "certified" else "probable-nonempty",
            mode=mode, detail="zero ideal: whole space", witness=witness,
            witness_prime=used_prime, prime=used_prime)

    try:
        basis = groebner_basis(gens, max_basis=max_basis, max_pairs=max_pairs)
    except ResourceCapError as exc:
        return EmptinessCertificate(kind="indeterminate", mode=mode,
                                    detail=str(exc), prime=used_prime)

    powers = pure_power_degrees(basis, nvars)
    if powers is not None:
        try:
            top = max_standard_degree(basis, nvars)
        except ResourceCapError as exc:
            return EmptinessCertificate(kind="indeterminate", mode=mode,
                                        detail=str(exc), prime=used_prime,
                                        basis_size=len(basis))
        exponents = []
        for i in range(nvars):
            d = None
            for cand in range(1, top + 2):
                mono = tuple(cand if v == i else 0 for v in range(nvars))
                probe = Form.monomial(work.field, nvars, mono, work.field.one())
                if normal_form(probe, basis).is_zero():
                    d = cand
                    break
            assert d is not None, "finite staircase guarantees a vanishing power"
            exponents.append(d)
        return EmptinessCertificate(
            kind="empty", mode=mode,
            detail=f"pure powers of all {nvars} variables lie in the ideal",
            exponents=tuple(exponents), prime=used_prime, basis_size=len(basis))

    # Staircase infinite: the locus is nonempty over the algebraic closure.
    witness, witness_prime = _witness_search(work, used_prime, line_tries)
    if witness is not None and witness_prime is None:
        return EmptinessCertificate(
            kind="nonempty", mode=mode, detail="rational witness found",
            witness=witness, prime=used_prime, basis_size=len(basis))
    base = ("staircase infinite: nonempty over the algebraic closure"
            if mode == "certified" else
            "staircase infinite mod p: likely nonempty")
    extra = "; witness found mod p" if witness is not None else "; no witness found"
    return EmptinessCertificate(
        kind="probable-nonempty", mode=mode, detail=base + extra,
        witness=witness, witness_prime=witness_prime, prime=used_prime,
        basis_size=len(basis))


def spot_check_empty(ideal: Ideal, prime: int, count: int, seed: int
                     ) -> tuple[bool, Optional[tuple]]:
    """Random projective points mod p hunting for a common zero.

    Returns (True, None) when no sampled point zeroes every generator, else
    (False, bad_point).  A sound EMPTY certificate must survive this.
    """
    field = PrimeField(prime)
    gens = [g.map_to_field(field) for g in ideal.nonzero_gens()]
    if not gens:
        one = field.one()
        return False, tuple(one if i == 0 else field.zero()
                            for i in range(ideal.nvars))
    rng = CounterRng(seed, digest_lane("spot-check"), ideal.nvars)
    for _ in range(count):
        point = [rng.int_between(0, prime - 1) for _ in range(ideal.nvars)]
        if all(v == 0 for v in point):
            point[0] = 1
        if all(field.is_zero(g.eval_at(point)) for g in gens):
            return False, tuple(point)
    return True, None


# ------------------------------------------------------------- witness search
#
# Strata of projective space by coordinate support.  On each stratum the last
# supported variable is normalized to 1; pair strata reduce to exact
# univariate root finding, larger strata to random line slices.


def _witness_search(ideal: Ideal, used_prime: Optional[int], line_tries: int
                    ) -> tuple[Optional[tuple], Optional[int]]:
    field = ideal.field
    nvars = ideal.nvars
    gens = ideal.nonzero_gens()
    fp_prime = used_prime if used_prime is not None else default_prime()
    rng = CounterRng(digest_lane("witness"),
                     digest_lane(_ideal_digest(ideal)))

    # Coordinate points.
    for i in range(nvars):
        point = tuple(field.one() if v == i else field.zero()
                      for v in range(nvars))
        if all(field.is_zero(g.eval_at(point)) for g in gens):
            return point, (None if field == QQ else fp_prime)

    exact = field == QQ
    supports = _supports_by_size(nvars)

    # Strata where every generator restricts to a linear equation admit a
    # direct solve; random lines would miss their isolated solutions.
    for support in reversed(supports):
        witness = _linear_stratum(gens, nvars, support, field)
        if witness is not None:
            return witness, (None if exact else fp_prime)

    # Exact roots on two-variable strata.
    if exact:
        for support in supports:
            if len(support) != 2:
                continue
            witness = _pair_stratum_rational(gens, nvars, support)
            if witness is not None:
                return witness, None
        # Random rational lines on larger strata.
        for support in supports:
            if len(support) < 3:
                continue
            witness = _line_stratum_rational(gens, nvars, support, rng, line_tries)
            if witness is not None:
                return witness, None

    # Mod-p fallback on every stratum of size >= 2.
    fp = PrimeField(fp_prime)
    gens_p = [g.map_to_field(fp) for g in gens] if exact else list(gens)
    for support in supports:
        if len(support) < 2:
            continue
        witness = _stratum_mod_p(gens_p, nvars, support, fp, rng, line_tries)
        if witness is not None:
            return witness, fp_prime
    return None, None


def _supports_by_size(nvars: int):
    from itertools import combinations
    out = []
    for size in range(2, nvars + 1):
        out.extend(combinations(range(nvars), size))
    return out


def _ideal_digest(ideal: Ideal) -> str:
    return "|".join(repr(g) for g in ideal.gens)


class _PolyRing:
    """Univariate polynomials as coefficient tuples (ascending degree)."""

    def __init__(self, field):
        self.field = field

    def zero(self):
        return ()

    def one(self):
        return (self.field.one(),)

    def from_scalar(self, c):
        return () if self.field.is_zero(c) else (c,)

    def add(self, a, b):
        f = self.field
        n = max(len(a), len(b))
        out = [f.zero()] * n
        for i, c in enumerate(a):
            out[i] = c
        for i, c in enumerate(b):
            out[i] = f.add(out[i], c)
        return self._trim(out)

    def mul(self, a, b):
        if not a or not b:
            return ()
        f = self.field
        out = [f.zero()] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if f.is_zero(ca):
                continue
            for j, cb in enumerate(b):
                out[i + j] = f.add(out[i + j], f.mul(ca, cb))
        return self._trim(out)

    def _trim(self, coeffs):
        while coeffs and self.field.is_zero(coeffs[-1]):
            coeffs.pop()
        return tuple(coeffs)

    def monic(self, a):
        if not a:
            return a
        inv = self.field.inv(a[-1])
        return tuple(self.field.mul(inv, c) for c in a)

    def mod(self, a, b):
        f = self.field
        if not b:
            raise ZeroDivisionError("poly mod by zero")
        a = list(a)
        inv_lead = f.inv(b[-1])
        while len(a) >= len(b):
            if f.is_zero(a[-1]):
                a.pop()
                continue
            factor = f.mul(a[-1], inv_lead)
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[shift + i] = f.sub(a[shift + i], f.mul(factor, c))
            a.pop()
        return self._trim(a)

    def gcd(self, a, b):
        while b:
            a, b = b, self.mod(a, b)
        return self.monic(a)

    def powmod(self, base, exp: int, modulus):
        result = self.one()
        base = self.mod(base, modulus)
        while exp:
            if exp & 1:
                result = self.mod(self.mul(result, base), modulus)
            base = self.mod(self.mul(base, base), modulus)
            exp >>= 1
        return result

    def eval(self, a, x):
        f = self.field
        acc = f.zero()
        for c in reversed(a):
            acc = f.add(f.mul(acc, x), c)
        return acc


def _restrict_to_stratum(gen: Form, nvars: int, support: tuple[int, ...],
                         ring: _PolyRing, line: Optional[dict] = None):
    """Restrict a form to the stratum: unsupported vars 0, last supported
    var 1, remaining vars either the line parameter (k=1) or affine functions
    of it (line map supplied)."""
    values = []
    t = (ring.field.zero(), ring.field.one())  # the polynomial "t"
    for v in range(nvars):
        if v not in support:
            values.append(ring.zero())
        elif v == support[-1]:
            values.append(ring.one())
        elif line is None:
            values.append(t)
        else:
            alpha, beta = line[v]
            values.append(ring.add(ring.mul((alpha,), t), ring.from_scalar(beta))
                          if not ring.field.is_zero(alpha)
                          else ring.from_scalar(beta))
    return gen.eval_generic(values, ring)


def _common_root_poly(gens, nvars, support, ring, line=None):
    """gcd of the stratum restrictions; () means some restriction is a
    nonzero constant (no zero on the stratum), (c,) constant likewise."""
    g = None
    for gen in gens:
        poly = _restrict_to_stratum(gen, nvars, support, ring, line)
        if not poly:
            continue
        g = poly if g is None else ring.gcd(g, poly)
        if len(g) == 1:
            return g
    return g  # None when all restrictions vanish identically


def _assemble_point(field, nvars, support, free_assignment: dict):
    coords = [field.zero()] * nvars
    coords[support[-1]] = field.one()
    for v, val in free_assignment.items():
        coords[v] = val
    return tuple(coords)


def _verify_witness(gens, point, field) -> bool:
    return all(field.is_zero(g.eval_at(point)) for g in gens)


def _restrict_form(gen: Form, support: tuple[int, ...]) -> Form:
    """Form in len(support)-1 variables: unsupported vars to 0, the last
    supported var to 1, the rest renumbered in ascending order."""
    field = gen.field
    free = support[:-1]
    pos = {v: idx for idx, v in enumerate(free)}
    last = support[-1]
    keep = set(support)
    terms: dict = {}
    for exps, coef in gen.terms.items():
        if any(e and v not in keep for v, e in enumerate(exps)):
            continue
        new = [0] * len(free)
        for v, e in enumerate(exps):
            if e and v != last:
                new[pos[v]] = e
        key = tuple(new)
        acc = field.add(terms.get(key, field.zero()), coef)
        if field.is_zero(acc):
            terms.pop(key, None)
        else:
            terms[key] = acc
    return Form(field, len(free), terms)


def _linear_stratum(gens, nvars, support, field):
    """Exact solve when every generator is affine-linear on the stratum."""
    k = len(support) - 1
    if k < 1:
        return None
    restricted = [_restrict_form(g, support) for g in gens]
    restricted = [r for r in restricted if not r.is_zero()]
    if any(any(sum(e) > 1 for e in r.terms) for r in restricted):
        return None
    free = support[:-1]
    if not restricted:
        assignment = {v: field.one() for v in free}
        point = _assemble_point(field, nvars, support, assignment)
        return point if _verify_witness(gens, point, field) else None
    zero_exp = (0,) * k
    rows, rhs = [], []
    for r in restricted:
        row = []
        for idx in range(k):
            unit = tuple(1 if m == idx else 0 for m in range(k))
            row.append(r.terms.get(unit, field.zero()))
        rows.append(row)
        rhs.append(field.neg(r.terms.get(zero_exp, field.zero())))
    solution = solve_affine(Matrix(field, rows), tuple(rhs))
    if solution is None:
        return None
    assignment = {v: solution.particular[i] for i, v in enumerate(free)}
    point = _assemble_point(field, nvars, support, assignment)
    return point if _verify_witness(gens, point, field) else None


def _pair_stratum_rational(gens, nvars, support):
    ring = _PolyRing(QQ)
    poly = _common_root_poly(gens, nvars, support, ring)
    if poly is None:
        # All generators vanish on the whole stratum.
        point = _assemble_point(QQ, nvars, support, {support[0]: QQ.one()})
        return point if _verify_witness(gens, point, QQ) else None
    if len(poly) <= 1:
        return None
    for root in _rational_roots(poly):
        point = _assemble_point(QQ, nvars, support, {support[0]: root})
        if _verify_witness(gens, point, QQ):
            return point
    return None


def _line_stratum_rational(gens, nvars, support, rng: CounterRng, tries: int):
    ring = _PolyRing(QQ)
    free = support[:-1]
    for attempt in range(tries):
        sub = rng.child(hash(support) & 0xFFFF, attempt)
        line = {}
        any_alpha = False
        for v in free:
            alpha = sub.int_between(-3, 3)
            beta = sub.int_between(-3, 3)
            any_alpha = any_alpha or alpha != 0
            line[v] = (QQ.of(alpha), QQ.of(beta))
        if not any_alpha:
            line[free[0]] = (QQ.one(), line[free[0]][1])
        poly = _common_root_poly(gens, nvars, support, ring, line)
        if poly is None or len(poly) <= 1:
            continue
        for root in _rational_roots(poly):
            assignment = {v: QQ.add(QQ.mul(line[v][0], root), line[v][1])
                          for v in free}
            point = _assemble_point(QQ, nvars, support, assignment)
            if _verify_witness(gens, point, QQ):
                return point
    return None


def _stratum_mod_p(gens_p, nvars, support, fp: PrimeField, rng: CounterRng,
                   tries: int):
    ring = _PolyRing(fp)
    free = support[:-1]
    if len(free) == 1:
        poly = _common_root_poly(gens_p, nvars, support, ring)
        if poly is None:
            point = _assemble_point(fp, nvars, support, {free[0]: fp.one()})
            return point if _verify_witness(gens_p, point, fp) else None
        if len(poly) <= 1:
            return None
        for root in _fp_roots(poly, fp, rng.child(digest_lane("cz"), *support)):
            point = _assemble_point(fp, nvars, support, {free[0]: root})
            if _verify_witness(gens_p, point, fp):
                return point
        return None
    for attempt in range(tries):
        sub = rng.child(digest_lane("fp-line"), *support, attempt)
        line = {v: (sub.int_between(0, fp.p - 1), sub.int_between(0, fp.p - 1))
                for v in free}
        if all(fp.is_zero(a) for a, _ in line.values()):
            v0 = free[0]
            line[v0] = (1, line[v0][1])
        poly = _common_root_poly(gens_p, nvars, support, ring, line)
        if poly is None or len(poly) <= 1:
            continue
        for root in _fp_roots(poly, fp, sub.child(digest_lane("cz"))):
            assignment = {v: fp.add(fp.mul(line[v][0], root), line[v][1])
                          for v in free}
            point = _assemble_point(fp, nvars, support, assignment)
            if _verify_witness(gens_p, point, fp):
                return point
    return None


def _rational_roots(poly) -> list:
    """Rational roots of a QQ polynomial via the rational root theorem.

    Divisor enumeration is capped, so this can miss roots of polynomials with
    huge extreme coefficients; callers fall back to mod-p search.
    """
    from fractions import Fraction
    from math import gcd

    # Clear denominators to a primitive integer polynomial.
    den = 1
    for c in poly:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in poly]
    roots = []
    # Strip powers of t: t = 0 root.
    k = 0
    while k < len(ints) and ints[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
        ints = ints[k:]
    if len(ints) <= 1:
        return roots
    a0, alead = abs(ints[0]), abs(ints[-1])
    p_divs = _small_divisors(a0)
    q_divs = _small_divisors(alead)
    if p_divs is None or q_divs is None:
        return roots
    ring = _PolyRing(QQ)
    seen = set()
    for p in p_divs:
        for q in q_divs:
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in seen:
                    continue
                seen.add(cand)
                if QQ.is_zero(ring.eval(tuple(Fraction(c) for c in ints), cand)):
                    roots.append(cand)
    return roots


def _small_divisors(m: int, cap: int = 4096):
    if m == 0:
        return [1]
    divs = []
    d = 1
    while d * d <= m and len(divs) < cap:
        if m % d == 0:
            divs.append(d)
            if d != m // d:
                divs.append(m // d)
        d += 1
    if d * d <= m:
        return None  # enumeration overflowed the cap
    return sorted(divs)


def _fp_roots(poly, fp: PrimeField, rng: CounterRng, max_depth: int = 64) -> list:
    """Distinct roots in F_p via gcd with x^p - x and random splitting."""
    ring = _PolyRing(fp)
    poly = ring.monic(poly)
    x = (fp.zero(), fp.one())
    xp = ring.powmod(x, fp.p, poly)
    # gcd with x^p - x keeps exactly the split part (distinct roots in F_p)
    g = ring.gcd(ring.add(xp, (fp.zero(), fp.neg(fp.one()))), poly)
    roots: list = []
    stack = [g]
    budget = max_depth
    while stack and budget > 0:
        h = stack.pop()
        if len(h) <= 1:
            continue
        if len(h) == 2:
            roots.append(fp.neg(fp.mul(h[0], fp.inv(h[1]))))
            continue
        budget -= 1
        a = rng.int_between(0, fp.p - 1)
        shifted = (a, fp.one())
        probe = ring.powmod(shifted, (fp.p - 1) // 2, h)
        part = ring.gcd(ring.add(probe, (fp.neg(fp.one()),)), h)
        if 0 < len(part) - 1 < len(h) - 1:
            stack.append(part)
            other = h
            # divide h by part
            other = _poly_div_exact(ring, h, part)
            stack.append(other)
        else:
            stack.append(h)  # retry with another shift
    return sorted(set(roots))


def _poly_div_exact(ring: _PolyRing, num, den):
    f = ring.field
    num = list(num)
    out = [f.zero()] * (len(num) - len(den) + 1)
    inv_lead = f.inv(den[-1])
    while len(num) >= len(den):
        if f.is_zero(num[-1]):
            num.pop()
            continue
        factor = f.mul(num[-1], inv_lead)
        shift = len(num) - len(den)
        out[shift] = factor
        for i, c in enumerate(den):
            num[shift + i] = f.sub(num[shift + i], f.mul(factor, c))
        num.pop()
    return ring._trim(out)
