"""Exact coefficient fields: the rationals and prime fields F_p."""

from __future__ import annotations

from fractions import Fraction

_PRIME_LIMIT = 2**31

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # deterministic Miller-Rabin; the witness set covers all n < 3.3e24
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldError(ValueError):
    """Raised for scalars that do not belong to the field."""


class Field:
    """The rationals (``p is None``) or the prime field F_p.

    Scalars are plain ``Fraction`` objects over Q and canonical ints in
    ``[0, p)`` over F_p; a ``Field`` instance only bundles the arithmetic
    and the conversions.  Instances are immutable and hashable.
    """

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None and (p >= _PRIME_LIMIT or not _is_prime(p)):
            raise FieldError(f"characteristic must be a prime below 2^31, got {p}")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Field objects are immutable")

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    # scalar constructors -------------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def of(self, value):
        """Coerce an int, Fraction or scalar of this field to a canonical scalar."""
        if self.p is None:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise FieldError(f"not a rational scalar: {value!r}")
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            return self.fraction(value.numerator, value.denominator)
        raise FieldError(f"not a scalar over {self!r}: {value!r}")

    def fraction(self, num: int, den: int):
        """The scalar num/den, reducing mod p when applicable."""
        if den == 0:
            raise FieldError("zero denominator")
        if self.p is None:
            return Fraction(num, den)
        if den % self.p == 0:
            raise FieldError(f"denominator {den} is not invertible mod {self.p}")
        return num * pow(den, -1, self.p) % self.p

    def parse(self, text: str):
        """Parse 'a' or 'a/b' into a scalar."""
        text = text.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            return self.fraction(int(num), int(den))
        return self.of(int(text))

    def to_str(self, a) -> str:
        return str(a)

    # arithmetic -----------------------------------------------------------

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else a * b % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p is None else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)
