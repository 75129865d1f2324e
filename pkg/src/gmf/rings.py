"""Weighted-homogeneous sparse polynomials over an exact field.

A ``GradedRing`` is a polynomial ring k[x_1..x_n] with positive integer
weights deg(x_i) = a_i.  Polynomials are stored sparsely as a map from
exponent tuples to nonzero field scalars, and carry their weighted degree
when homogeneous.  The canonical term order everywhere is weighted graded
reverse lexicographic, ties broken toward earlier variables.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator

from .fields import Field, FieldError

Exponents = tuple  # tuple[int, ...]


class RingError(ValueError):
    pass


class ParseError(ValueError):
    pass


@lru_cache(maxsize=None)
def _monomials_of_degree(weights: tuple, degree: int) -> tuple:
    """All exponent tuples of the given weighted degree, grevlex-descending."""
    if degree < 0:
        return ()
    if not weights:
        return ((),) if degree == 0 else ()

    def rec(idx: int, remaining: int):
        if idx == len(weights) - 1:
            q, r = divmod(remaining, weights[idx])
            if r == 0:
                yield (q,)
            return
        w = weights[idx]
        for e in range(remaining // w + 1):
            for tail in rec(idx + 1, remaining - e * w):
                yield (e,) + tail

    monos = list(rec(0, degree))
    monos.sort(key=lambda e: grevlex_key(weights, e), reverse=True)
    return tuple(monos)


def grevlex_key(weights: tuple, exps: Exponents):
    """Sort key whose max is the weighted-grevlex leading monomial."""
    wdeg = sum(w * e for w, e in zip(weights, exps))
    return (wdeg,) + tuple(-e for e in reversed(exps))


class GradedRing:
    """k[x_1..x_n] with deg(x_i) = a_i > 0 over an exact field."""

    __slots__ = ("variables", "weights", "field", "_index")

    def __init__(self, variables: Iterable[str], weights: Iterable[int], field: Field):
        variables = tuple(variables)
        weights = tuple(int(w) for w in weights)
        if len(variables) != len(weights):
            raise RingError("one weight per variable required")
        if len(set(variables)) != len(variables):
            raise RingError("variable names must be unique")
        if any(w <= 0 for w in weights):
            raise RingError("weights must be strictly positive")
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(variables)})

    def __setattr__(self, name, value):
        raise AttributeError("GradedRing objects are immutable")

    def __eq__(self, other):
        return (
            isinstance(other, GradedRing)
            and self.variables == other.variables
            and self.weights == other.weights
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.variables, self.weights, self.field))

    def __repr__(self):
        ws = ",".join(map(str, self.weights))
        return f"{self.field!r}[{','.join(self.variables)}; weights {ws}]"

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def monomial_degree(self, exps: Exponents) -> int:
        return sum(w * e for w, e in zip(self.weights, exps))

    def monomials_of_degree(self, degree: int) -> tuple:
        return _monomials_of_degree(self.weights, degree)

    def term_key(self, exps: Exponents):
        return grevlex_key(self.weights, exps)

    # element constructors -------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: self.field.one})

    def constant(self, c) -> "Polynomial":
        c = self.field.of(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def variable(self, name: str) -> "Polynomial":
        i = self._index.get(name)
        if i is None:
            raise RingError(f"unknown variable {name!r}")
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {exps: self.field.one})

    def monomial(self, exps: Exponents, coeff=1) -> "Polynomial":
        c = self.field.of(coeff)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def from_terms(self, terms: dict) -> "Polynomial":
        clean = {tuple(e): c for e, c in terms.items() if c}
        return Polynomial(self, clean)


class Polynomial:
    """Sparse weighted-homogeneous-aware polynomial; immutable after construction."""

    __slots__ = ("ring", "terms", "degree")

    def __init__(self, ring: GradedRing, terms: dict):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", terms)
        degrees = {ring.monomial_degree(e) for e in terms}
        object.__setattr__(self, "degree", degrees.pop() if len(degrees) == 1 else None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial objects are immutable")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_homogeneous(self) -> bool:
        return self.is_zero or self.degree is not None

    def is_unit_constant(self) -> bool:
        """True for a nonzero constant (a graded unit)."""
        return self.degree == 0

    def constant_value(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        field = self.ring.field
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = field.add(terms.get(e, field.zero), c)
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Polynomial(self.ring, terms)

    def __neg__(self) -> "Polynomial":
        field = self.ring.field
        return Polynomial(self.ring, {e: field.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        field = self.ring.field
        if not isinstance(other, Polynomial):
            return self.scale(field.of(other))
        self._check(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = field.add(terms.get(e, field.zero), field.mul(c1, c2))
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise RingError("negative polynomial power")
        result = self.ring.one()
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c) -> "Polynomial":
        field = self.ring.field
        c = field.of(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: field.mul(v, c) for e, v in self.terms.items()})

    def monomial_times(self, exps: Exponents, coeff) -> "Polynomial":
        """self * coeff * x^exps, the basic reduction step primitive."""
        field = self.ring.field
        coeff = field.of(coeff)
        if not coeff:
            return self.ring.zero()
        terms = {}
        for e, c in self.terms.items():
            terms[tuple(a + b for a, b in zip(e, exps))] = field.mul(c, coeff)
        return Polynomial(self.ring, terms)

    def coefficient(self, exps: Exponents):
        return self.terms.get(tuple(exps), self.ring.field.zero)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingError("polynomials from different rings")

    def leading_term(self):
        """(exponents, coeff) of the grevlex-leading term; None for zero."""
        if not self.terms:
            return None
        e = max(self.terms, key=self.ring.term_key)
        return e, self.terms[e]

    def sorted_terms(self) -> Iterator:
        for e in sorted(self.terms, key=self.ring.term_key, reverse=True):
            yield e, self.terms[e]

    # printing ---------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(self.ring.variables, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            coeff_str = str(coeff)
            sign = "-" if coeff_str.startswith("-") else "+"
            mag = coeff_str.lstrip("-")
            if not factors:
                body = mag
            elif mag == "1":
                body = "*".join(factors)
            else:
                body = "*".join([mag] + factors)
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = first_body if first_sign == "+" else "-" + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __repr__ = __str__


# ---------------------------------------------------------------------------
# expression parser
#
# The accepted grammar (documented in docs/grammar.ebnf):
#
#   expr    := term (("+" | "-") term)*
#   term    := factor ("*" factor)*
#   factor  := ("+" | "-")* base ("^" integer)?
#   base    := number | variable | "(" expr ")"
#   number  := integer ("/" integer)?
#
# No implicit multiplication: write 2*x^2*y, not 2x^2y.


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list = []
        self._scan()
        self.i = 0

    def _scan(self):
        text, n = self.text, len(self.text)
        i = 0
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch in "+-*^()":
                self.tokens.append((ch, ch, i))
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                if j < n and text[j] == "/":
                    k = j + 1
                    while k < n and text[k].isdigit():
                        k += 1
                    if k == j + 1:
                        raise ParseError(f"malformed rational at position {i}")
                    self.tokens.append(("num", text[i:k], i))
                    i = k
                else:
                    self.tokens.append(("num", text[i:j], i))
                    i = j
                continue
            if ch.isalpha() or ch == "_":
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.tokens.append(("name", text[i:j], i))
                i = j
                continue
            raise ParseError(f"unexpected character {ch!r} at position {i}")
        self.tokens.append(("end", "", n))

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok


class _Parser:
    def __init__(self, text: str, ring: GradedRing):
        self.toks = _Tokenizer(text)
        self.ring = ring

    def parse(self) -> Polynomial:
        poly = self.expr()
        kind, val, pos = self.toks.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r} at position {pos}")
        return poly

    def expr(self) -> Polynomial:
        poly = self.term()
        while True:
            kind, val, _ = self.toks.peek()
            if val == "+":
                self.toks.next()
                poly = poly + self.term()
            elif val == "-":
                self.toks.next()
                poly = poly - self.term()
            else:
                return poly

    def term(self) -> Polynomial:
        poly = self.factor()
        while self.toks.peek()[1] == "*":
            self.toks.next()
            poly = poly * self.factor()
        return poly

    def factor(self) -> Polynomial:
        sign = 1
        while self.toks.peek()[1] in ("+", "-"):
            if self.toks.next()[1] == "-":
                sign = -sign
        poly = self.base()
        if self.toks.peek()[1] == "^":
            self.toks.next()
            kind, val, pos = self.toks.next()
            if kind != "num" or "/" in val:
                raise ParseError(f"exponent must be an integer at position {pos}")
            poly = poly ** int(val)
        return poly if sign == 1 else -poly

    def base(self) -> Polynomial:
        kind, val, pos = self.toks.next()
        if kind == "num":
            try:
                return self.ring.constant(self.ring.field.parse(val))
            except FieldError as exc:
                raise ParseError(f"bad coefficient {val!r}: {exc}") from exc
        if kind == "name":
            try:
                return self.ring.variable(val)
            except RingError as exc:
                raise ParseError(str(exc)) from exc
        if val == "(":
            poly = self.expr()
            kind, val, pos = self.toks.next()
            if val != ")":
                raise ParseError(f"expected ')' at position {pos}")
            return poly
        raise ParseError(f"unexpected {val!r} at position {pos}")


def parse_polynomial(text: str, ring: GradedRing) -> Polynomial:
    """Parse an expression into a canonical sparse polynomial.

    Raises ParseError for malformed syntax, unknown variables and
    coefficients that do not lie in the ring's field.
    """
    return _Parser(text, ring).parse()
