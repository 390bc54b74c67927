"""Homogeneous polynomial forms and matrices of linear forms.

A Form is a dict from exponent tuples to nonzero scalars, tagged with a field
and a fixed variable count (3 for plane problems, 4 for space problems).
Monomials are ordered by graded reverse lexicographic order with
x1 > x2 > ... > xn, the order used throughout the Groebner layer.

A LinearFormMatrix is stored as one constant coefficient matrix per variable;
entry (i, j) is the linear form sum_k x_k * coeffs[k][i, j].  Minor ideals are
generated in lexicographic subset order so generator lists are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .fields import same_field
from .matrices import Matrix, ShapeError


def drl_key(exps: tuple[int, ...]):
    """Sort key: graded reverse lexicographic, largest monomial has largest key."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def monomials_of_degree(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples of the given total degree, descending drl order."""
    if degree < 0:
        return ()
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, nvars)
    out.sort(key=drl_key, reverse=True)
    return tuple(out)


class Form:
    """Immutable multivariate polynomial; zero coefficients are never stored."""

    __slots__ = ("field", "nvars", "terms", "_lead")

    def __init__(self, field, nvars: int, terms: dict):
        clean = {}
        for exps, coef in terms.items():
            coef = field.of(coef)
            if field.is_zero(coef):
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ShapeError(f"bad exponent tuple {exps} for {nvars} variables")
            clean[exps] = coef
        self.field = field
        self.nvars = nvars
        self.terms = clean
        self._lead = None

    # ---------------------------------------------------------------- builders

    @staticmethod
    def zero(field, nvars: int) -> "Form":
        return Form(field, nvars, {})

    @staticmethod
    def constant(field, nvars: int, value) -> "Form":
        return Form(field, nvars, {(0,) * nvars: value})

    @staticmethod
    def variable(field, nvars: int, index: int) -> "Form":
        # index is 0-based; the variable prints as x{index+1}.
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return Form(field, nvars, {exps: field.one()})

    @staticmethod
    def monomial(field, nvars: int, exps: Sequence[int], coef) -> "Form":
        return Form(field, nvars, {tuple(exps): coef})

    # ---------------------------------------------------------------- structure

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero form (homogeneous inputs only)."""
        if not self.terms:
            return -1
        degs = {sum(e) for e in self.terms}
        if len(degs) != 1:
            raise ValueError("form is not homogeneous")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def leading(self) -> tuple[tuple[int, ...], object]:
        """(monomial, coefficient) of the drl-largest term (memoized; the
        Groebner layer asks for it far more often than forms are built)."""
        if not self.terms:
            raise ValueError("zero form has no leading term")
        if self._lead is None:
            exps = max(self.terms, key=drl_key)
            self._lead = (exps, self.terms[exps])
        return self._lead

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        return sorted(self.terms.items(), key=lambda t: drl_key(t[0]), reverse=True)

    # ---------------------------------------------------------------- algebra

    def _check(self, other: "Form"):
        same_field(self.field, other.field)
        if self.nvars != other.nvars:
            raise ShapeError("variable count mismatch")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        f = self.field
        out = dict(self.terms)
        for exps, coef in other.terms.items():
            acc = f.add(out.get(exps, f.zero()), coef)
            if f.is_zero(acc):
                out.pop(exps, None)
            else:
                out[exps] = acc
        return Form(f, self.nvars, out)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        f = self.field
        return Form(f, self.nvars, {e: f.neg(c) for e, c in self.terms.items()})

    def __mul__(self, other: "Form") -> "Form":
        self._check(other)
        f = self.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                acc = f.add(out.get(exps, f.zero()), f.mul(c1, c2))
                if f.is_zero(acc):
                    out.pop(exps, None)
                else:
                    out[exps] = acc
        return Form(f, self.nvars, out)

    def scale(self, scalar) -> "Form":
        f = self.field
        s = f.of(scalar)
        if f.is_zero(s):
            return Form.zero(f, self.nvars)
        return Form(f, self.nvars, {e: f.mul(s, c) for e, c in self.terms.items()})

    def mul_monomial(self, exps: Sequence[int], coef) -> "Form":
        f = self.field
        coef = f.of(coef)
        exps = tuple(exps)
        return Form(f, self.nvars,
                    {tuple(a + b for a, b in zip(e, exps)): f.mul(coef, c)
                     for e, c in self.terms.items()})

    def monic(self) -> "Form":
        if not self.terms:
            return self
        _, lead = self.leading()
        return self.scale(self.field.inv(lead))

    # ---------------------------------------------------------------- evaluation

    def eval_at(self, point: Sequence):
        """Exact evaluation at a scalar point of the same field."""
        f = self.field
        vals = [f.of(x) for x in point]
        if len(vals) != self.nvars:
            raise ShapeError("point length does not match variable count")
        acc = f.zero()
        for exps, coef in self.terms.items():
            term = coef
            for v, e in zip(vals, exps):
                for _ in range(e):
                    term = f.mul(term, v)
            acc = f.add(acc, term)
        return acc

    def eval_generic(self, values, ring):
        """Evaluate with coordinates drawn from any commutative ring.

        Args:
            values: one ring element per variable.
            ring: object with zero()/one()/add(a,b)/mul(a,b)/from_scalar(c).
        """
        acc = ring.zero()
        for exps, coef in self.terms.items():
            term = ring.from_scalar(coef)
            for v, e in zip(values, exps):
                for _ in range(e):
                    term = ring.mul(term, v)
            acc = ring.add(acc, term)
        return acc

    def map_to_field(self, field) -> "Form":
        return Form(field, self.nvars, dict(self.terms))

    # ---------------------------------------------------------------- dunder

    def __eq__(self, other):
        return (isinstance(other, Form) and self.field == other.field
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, self.nvars, tuple(self.sorted_terms())))

    def __repr__(self):
        if not self.terms:
            return "Form(0)"
        parts = []
        for exps, coef in self.sorted_terms():
            mono = "*".join(f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}"
                            for i, e in enumerate(exps) if e)
            text = self.field.to_str(coef)
            parts.append(f"{text}*{mono}" if mono else text)
        return "Form(" + " + ".join(parts) + ")"


@dataclass(frozen=True)
class Ideal:
    """A finite, ordered generating set; order matters for reproducibility."""

    field: object
    nvars: int
    gens: tuple[Form, ...]

    def __post_init__(self):
        for g in self.gens:
            same_field(self.field, g.field)
            if g.nvars != self.nvars:
                raise ShapeError("generator variable count mismatch")

    def nonzero_gens(self) -> tuple[Form, ...]:
        return tuple(g for g in self.gens if not g.is_zero())

    def map_to_field(self, field) -> "Ideal":
        return Ideal(field, self.nvars, tuple(g.map_to_field(field) for g in self.gens))


class LinearFormMatrix:
    """Matrix of linear forms, stored as one constant matrix per variable."""

    __slots__ = ("field", "nvars", "nrows", "ncols", "coeffs")

    def __init__(self, field, nvars: int, coeffs: Sequence[Matrix]):
        if len(coeffs) != nvars:
            raise ShapeError("need one coefficient matrix per variable")
        shape = (coeffs[0].nrows, coeffs[0].ncols)
        for m in coeffs:
            same_field(field, m.field)
            if (m.nrows, m.ncols) != shape:
                raise ShapeError("coefficient matrices differ in shape")
        self.field = field
        self.nvars = nvars
        self.nrows, self.ncols = shape
        self.coeffs = tuple(coeffs)

    def entry(self, i: int, j: int) -> Form:
        terms = {}
        for k in range(self.nvars):
            c = self.coeffs[k][i, j]
            if not self.field.is_zero(c):
                exps = tuple(1 if v == k else 0 for v in range(self.nvars))
                terms[exps] = c
        return Form(self.field, self.nvars, terms)

    def eval_at(self, point: Sequence) -> Matrix:
        f = self.field
        vals = [f.of(x) for x in point]
        if len(vals) != self.nvars:
            raise ShapeError("point length does not match variable count")
        acc = Matrix.zeros(f, self.nrows, self.ncols)
        for v, m in zip(vals, self.coeffs):
            if not f.is_zero(v):
                acc = acc + m.scale(v)
        return acc

    def transpose(self) -> "LinearFormMatrix":
        return LinearFormMatrix(self.field, self.nvars,
                                [m.transpose() for m in self.coeffs])

    def left_mul(self, c: Matrix) -> "LinearFormMatrix":
        return LinearFormMatrix(self.field, self.nvars,
                                [c @ m for m in self.coeffs])

    def right_mul(self, c: Matrix) -> "LinearFormMatrix":
        return LinearFormMatrix(self.field, self.nvars,
                                [m @ c for m in self.coeffs])

    def form_rows(self) -> list[list[Form]]:
        return [[self.entry(i, j) for j in range(self.ncols)]
                for i in range(self.nrows)]

    def map_to_field(self, field) -> "LinearFormMatrix":
        return LinearFormMatrix(field, self.nvars,
                                [m.map_to_field(field) for m in self.coeffs])

    def __eq__(self, other):
        return (isinstance(other, LinearFormMatrix) and self.field == other.field
                and self.nvars == other.nvars and self.coeffs == other.coeffs)

    def __repr__(self):
        return (f"LinearFormMatrix({self.field!r}, {self.nrows}x{self.ncols}, "
                f"{self.nvars} vars)")


def form_det(entries: list[list[Form]]) -> Form:
    """Determinant of a small square matrix of forms by cofactor expansion."""
    k = len(entries)
    if any(len(row) != k for row in entries):
        raise ShapeError("determinant of a non-square block")
    if k == 0:
        raise ShapeError("empty determinant")
    first = entries[0][0]
    field, nvars = first.field, first.nvars
    if k == 1:
        return entries[0][0]

    def rec(rows: tuple[int, ...], cols: tuple[int, ...]) -> Form:
        if len(rows) == 1:
            return entries[rows[0]][cols[0]]
        acc = Form.zero(field, nvars)
        r = rows[0]
        rest = rows[1:]
        for pos, c in enumerate(cols):
            cell = entries[r][c]
            if cell.is_zero():
                continue
            minor = rec(rest, cols[:pos] + cols[pos + 1:])
            term = cell * minor
            acc = acc + term if pos % 2 == 0 else acc - term
        return acc

    return rec(tuple(range(k)), tuple(range(k)))


def minor_ideal(lfm: LinearFormMatrix, k: int) -> Ideal:
    """Ideal of all k x k minors, subsets enumerated in lexicographic order.

    Generators are degree-k forms (or zero forms, which are kept in place so
    generator indices are stable across equal-shaped inputs).
    """
    if k < 1 or k > min(lfm.nrows, lfm.ncols):
        raise ShapeError(f"no {k}x{k} minors in a {lfm.nrows}x{lfm.ncols} matrix")
    grid = lfm.form_rows()
    gens = []
    for rows in combinations(range(lfm.nrows), k):
        for cols in combinations(range(lfm.ncols), k):
            gens.append(form_det([[grid[i][j] for j in cols] for i in rows]))
    return Ideal(lfm.field, lfm.nvars, tuple(gens))
