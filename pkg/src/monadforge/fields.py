"""Exact scalar arithmetic over the rationals and over word-sized prime fields.

Every matrix and polynomial in this package carries a field tag, one of:

* ``QQ``            -- arbitrary-precision rationals backed by ``fractions.Fraction``
* ``PrimeField(p)`` -- integers mod p for an odd prime p < 2**62

Scalars themselves are plain Python values (``Fraction`` for QQ, ``int`` in
``[0, p)`` for prime fields); the field object supplies the arithmetic.  Mixing
scalars of different fields is always an error, raised by the containers.
"""

from __future__ import annotations

import os
from fractions import Fraction

# Largest prime below 2**62.  Products of two reduced scalars stay below
# 2**124, which Python big ints handle exactly; int64 vectorization would not.
DEFAULT_PRIME = 4611686018427387847

PRIME_ENV_VAR = "MONADFORGE_PRIME"

# Deterministic Miller-Rabin witnesses, exact for all n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class MixedFieldError(TypeError):
    """Two operands tagged with different scalar fields."""


class ScalarFormatError(ValueError):
    """A scalar string does not parse as `p` or `p/q`."""


class BadPrimeError(ValueError):
    """Requested characteristic is not an odd prime below 2**62."""


def is_prime(m: int) -> bool:
    """Deterministic primality test for 0 <= m < 2**64."""
    if m < 2:
        return False
    for q in _MR_BASES:
        if m % q == 0:
            return m == q
    d, r = m - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(r - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def default_prime() -> int:
    """Working prime for fast-mode arithmetic.

    Reads the MONADFORGE_PRIME environment variable when set, otherwise the
    frozen default.  Rejects non-prime overrides instead of computing garbage.
    """
    raw = os.environ.get(PRIME_ENV_VAR)
    if raw is None:
        return DEFAULT_PRIME
    try:
        p = int(raw)
    except ValueError as exc:
        raise BadPrimeError(f"{PRIME_ENV_VAR}={raw!r} is not an integer") from exc
    validate_prime(p)
    return p


def validate_prime(p: int) -> None:
    if not (2 < p < 2**62):
        raise BadPrimeError(f"characteristic {p} out of range (3 .. 2**62)")
    if not is_prime(p):
        raise BadPrimeError(f"characteristic {p} is not prime")


class RationalField:
    """The field of rationals; scalars are ``Fraction`` (always reduced)."""

    name = "QQ"
    char = 0

    def of(self, x) -> Fraction:
        """Coerce an int, Fraction or scalar string into the field."""
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return self.from_str(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into QQ")

    def zero(self) -> Fraction:
        return _F0

    def one(self) -> Fraction:
        return _F1

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of 0 in QQ")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by 0 in QQ")
        return a / b

    def is_zero(self, a) -> bool:
        return not a

    def to_str(self, a) -> str:
        return str(a)

    def from_str(self, s: str) -> Fraction:
        num, den = _split_scalar_string(s)
        if den == 0:
            raise ScalarFormatError(f"zero denominator in {s!r}")
        return Fraction(num, den)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("monadforge.QQ")


class PrimeField:
    """Integers mod an odd prime below 2**62; scalars are ints in [0, p)."""

    __slots__ = ("p",)
    char_positive = True

    def __init__(self, p: int):
        validate_prime(p)
        self.p = p

    @property
    def name(self) -> str:
        return f"F{self.p}"

    @property
    def char(self) -> int:
        return self.p

    def of(self, x) -> int:
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(
                    f"denominator {x.denominator} vanishes mod {self.p}")
            return x.numerator * pow(den, -1, self.p) % self.p
        if isinstance(x, str):
            return self.from_str(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self.name}")

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self.name}")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def to_str(self, a) -> str:
        return str(a % self.p)

    def from_str(self, s: str) -> int:
        num, den = _split_scalar_string(s)
        if den == 1:
            return num % self.p
        return self.of(Fraction(num, den))

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("monadforge.Fp", self.p))


QQ = RationalField()

_F0 = Fraction(0)
_F1 = Fraction(1)


def _split_scalar_string(s: str) -> tuple[int, int]:
    # Accepted forms: "-3", "5/7", "-12/5".  Whitespace is not tolerated;
    # these strings appear inside JSON files and should be canonical.
    if not isinstance(s, str) or not s:
        raise ScalarFormatError(f"bad scalar string {s!r}")
    num_s, sep, den_s = s.partition("/")
    try:
        num = int(num_s)
        den = int(den_s) if sep else 1
    except ValueError as exc:
        raise ScalarFormatError(f"bad scalar string {s!r}") from exc
    if str(num) != num_s:
        # canonical digits only: no whitespace, plus signs or leading zeros
        raise ScalarFormatError(f"bad scalar string {s!r}")
    if sep and (den <= 0 or den_s != str(den)):
        raise ScalarFormatError(f"bad scalar string {s!r}: denominator must be positive")
    return num, den


def same_field(a, b):
    """Return the common field of two tagged objects or raise MixedFieldError."""
    if a != b:
        raise MixedFieldError(f"mixed scalar fields {a!r} and {b!r}")
    return a
