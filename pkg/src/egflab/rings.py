"""Exact coefficient arithmetic.

Statistics take values in a commutative ring containing the rationals.
Two concrete element kinds are supported and freely mixed:

* scalars — arbitrary-precision rationals (`fractions.Fraction`, which
  already enforces q > 0, gcd(|p|, q) = 1 and 0 = 0/1);
* `MultiPolynomial` — multivariate polynomials over the rationals with
  free-form identifier variables, used for monomial-valued statistics
  such as ``y**components``.

Every operation is total and exact; there is no floating point here.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import MissingVariableError

Scalar = Union[int, Fraction]
RingElem = Union[int, Fraction, "MultiPolynomial"]

#: A monomial is a tuple of (variable, exponent) pairs, sorted by variable
#: name, with every exponent >= 1; the empty tuple is the constant monomial.
Monomial = tuple  # tuple[tuple[str, int], ...]

_VAR_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _normalize_monomial(mono) -> Monomial:
    if isinstance(mono, Mapping):
        items = mono.items()
    else:
        items = mono
    merged: dict[str, int] = {}
    for var, exp in items:
        if not isinstance(var, str) or not _VAR_RE.fullmatch(var):
            raise ValueError(f"invalid variable name: {var!r}")
        exp = int(exp)
        if exp < 0:
            raise ValueError(f"negative exponent for {var}")
        if exp:
            merged[var] = merged.get(var, 0) + exp
    return tuple(sorted(merged.items()))


class MultiPolynomial:
    """Immutable multivariate polynomial with Fraction coefficients.

    Internally a map from monomial to nonzero coefficient; equal term maps
    mean equal polynomials.  A constant polynomial compares equal to (and
    hashes like) the corresponding scalar, so scalars and polynomials mix
    transparently in series arithmetic.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        data: dict[Monomial, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for mono, coeff in items:
                mono = _normalize_monomial(mono)
                coeff = Fraction(coeff)
                if not coeff:
                    continue
                acc = data.get(mono, _ZERO) + coeff
                if acc:
                    data[mono] = acc
                else:
                    data.pop(mono, None)
        self._terms = data

    @classmethod
    def constant(cls, value) -> "MultiPolynomial":
        return cls({(): Fraction(value)})

    @classmethod
    def variable(cls, name: str) -> "MultiPolynomial":
        return cls({((name, 1),): Fraction(1)})

    @classmethod
    def monomial(cls, powers: Mapping[str, int], coeff=1) -> "MultiPolynomial":
        return cls({tuple(powers.items()): Fraction(coeff)})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_value(self) -> Fraction:
        """Value of the polynomial's constant term."""
        return self._terms.get((), _ZERO)

    def variables(self) -> tuple:
        seen = set()
        for mono in self._terms:
            for var, _ in mono:
                seen.add(var)
        return tuple(sorted(seen))

    def degree(self, var: str) -> int:
        best = 0
        for mono in self._terms:
            for v, e in mono:
                if v == var and e > best:
                    best = e
        return best

    def coefficient(self, var: str, power: int) -> "MultiPolynomial":
        """Coefficient of ``var**power`` as a polynomial in the other variables."""
        out: dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms.items():
            exps = dict(mono)
            if exps.pop(var, 0) != power:
                continue
            key = tuple(sorted(exps.items()))
            out[key] = out.get(key, _ZERO) + coeff
        return MultiPolynomial(out)

    def substitute(self, assignment: Mapping[str, Scalar]) -> Fraction:
        """Evaluate at the given point; every occurring variable must be bound."""
        total = _ZERO
        for mono, coeff in self._terms.items():
            value = coeff
            for var, exp in mono:
                if var not in assignment:
                    raise MissingVariableError(f"no value for variable {var!r}")
                value *= Fraction(assignment[var]) ** exp
            total += value
        return total

    # arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "MultiPolynomial | None":
        if isinstance(other, MultiPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPolynomial({(): Fraction(other)})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        data = dict(self._terms)
        for mono, coeff in other._terms.items():
            acc = data.get(mono, _ZERO) + coeff
            if acc:
                data[mono] = acc
            else:
                data.pop(mono, None)
        out = MultiPolynomial.__new__(MultiPolynomial)
        out._terms = data
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MultiPolynomial.__new__(MultiPolynomial)
        out._terms = {m: -c for m, c in self._terms.items()}
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        data: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                if m2:
                    exps = dict(m1)
                    for var, exp in m2:
                        exps[var] = exps.get(var, 0) + exp
                    key = tuple(sorted(exps.items()))
                else:
                    key = m1
                acc = data.get(key, _ZERO) + c1 * c2
                if acc:
                    data[key] = acc
                else:
                    data.pop(key, None)
        out = MultiPolynomial.__new__(MultiPolynomial)
        out._terms = data
        return out

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative polynomial power")
        result = MultiPolynomial.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPolynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"MultiPolynomial({str(self)!r})"


_ZERO = Fraction(0)


# ring operations ------------------------------------------------------


def ring_add(a: RingElem, b: RingElem) -> RingElem:
    return a + b


def ring_mul(a: RingElem, b: RingElem) -> RingElem:
    return a * b


def ring_neg(a: RingElem) -> RingElem:
    return -a


def ring_eval(p: RingElem, assignment: Mapping[str, Scalar]) -> Fraction:
    """Exact substitution; constants pass through untouched."""
    if isinstance(p, MultiPolynomial):
        return p.substitute(assignment)
    return Fraction(p)


# canonical text form --------------------------------------------------


def format_scalar(value: Scalar) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_scalar(text: str) -> Fraction:
    return Fraction(text.strip())


def _term_sort_key(mono: Monomial):
    # non-constant terms first, higher powers before lower, variables a-z
    if not mono:
        return (1,)
    return (0, tuple((var, -exp) for var, exp in mono))


def format_polynomial(p: MultiPolynomial) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for mono in sorted(p._terms, key=_term_sort_key):
        coeff = p._terms[mono]
        factors = [var if exp == 1 else f"{var}^{exp}" for var, exp in mono]
        magnitude = format_scalar(abs(coeff))
        if factors and magnitude == "1":
            body = "·".join(factors)
        else:
            body = "·".join([magnitude] + factors)
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[+\-·*^−]))"
)


def parse_polynomial(text: str) -> MultiPolynomial:
    """Parse the canonical polynomial form (also accepts '*' and ASCII '-')."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ValueError(f"bad polynomial syntax near {text[pos:]!r}")
            break
        tokens.append(m)
        pos = m.end()

    terms: list[tuple[dict, Fraction]] = []
    sign = Fraction(1)
    current: tuple[dict, Fraction] | None = None
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        op = tok.group("op")
        if op in ("+", "-", "−"):
            if current is not None:
                terms.append(current)
                current = None
            sign = Fraction(1) if op == "+" else Fraction(-1)
            i += 1
            continue
        if op in ("·", "*"):
            if current is None:
                raise ValueError("misplaced multiplication sign")
            i += 1
            continue
        if op == "^":
            raise ValueError("misplaced exponent sign")
        if current is None:
            current = ({}, sign)
            sign = Fraction(1)
        powers, coeff = current
        if tok.group("num"):
            current = (powers, coeff * Fraction(tok.group("num")))
            i += 1
            continue
        var = tok.group("var")
        exp = 1
        if i + 2 < len(tokens) and tokens[i + 1].group("op") == "^" and tokens[i + 2].group("num"):
            exp_text = tokens[i + 2].group("num")
            if "/" in exp_text:
                raise ValueError("fractional exponent")
            exp = int(exp_text)
            i += 3
        else:
            i += 1
        powers[var] = powers.get(var, 0) + exp
        current = (powers, coeff)
    if current is not None:
        terms.append(current)
    return MultiPolynomial(
        (tuple(sorted(powers.items())), coeff) for powers, coeff in terms
    )


_SCALAR_RE = re.compile(r"[+\-−]?\d+(?:\s*/\s*\d+)?")


def format_ring_elem(value: RingElem) -> str:
    if isinstance(value, MultiPolynomial):
        return format_polynomial(value)
    return format_scalar(value)


def parse_ring_elem(text: str) -> RingElem:
    """Parse a scalar or polynomial; scalars come back as Fractions."""
    stripped = text.strip()
    if _SCALAR_RE.fullmatch(stripped):
        return Fraction(stripped.replace("−", "-").replace(" ", ""))
    poly = parse_polynomial(stripped)
    if poly.is_constant():
        return poly.constant_value()
    return poly
