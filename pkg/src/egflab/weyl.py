"""Normal ordering in the algebra generated by a, a† with a·a† − a†·a = 1.

Operators are rational combinations of words over the two-letter alphabet,
stored as strings of 'A' (annihilation a) and 'D' (creation a†).  Normal
monomials (a†)^i a^j form a basis, so an operator has a unique normal form.

Two product routes exist on purpose:

* the rewriting engine applies a a† → a†a + 1 until no inversion is left
  (any strategy; the inversion count drops each step, so it terminates,
  and the result is strategy-independent);
* ``multiply_normal`` uses the closed-form product of normal monomials
  a^j (a†)^i = sum_k k! C(j,k) C(i,k) (a†)^(i-k) a^(j-k).

The closed form is the production path; the test suite certifies it
against the rewriting route on randomized inputs.

Powers of a homogeneous operator (constant excess i - j across the normal
support) flatten into a two-index table of generalized Stirling numbers;
for operators whose words each contain exactly one annihilation, the
bivariate generating function of that table factorizes as
g(x)·exp(y·A(x)), which ``verify_one_annihilation`` checks exactly.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .egf import EgfSeries, egf_div, egf_mul, egf_pow, egf_scale
from .errors import (
    BlowupLimitError,
    ConstantTermError,
    EgflabError,
    ExtractionMismatchError,
    InhomogeneousOperatorError,
    NotOneAnnihilationError,
    OperatorSyntaxError,
)
from .report import FAIL, PASS, CheckReport
from .rings import format_scalar

ANNIHILATION = "A"
CREATION = "D"

#: Default guard against exponential word blowup in power expansions.
WORD_LIMIT = 10**6


def _clean_terms(items) -> dict:
    out: dict = {}
    for key, coeff in items:
        coeff = Fraction(coeff)
        if not coeff:
            continue
        acc = out.get(key, 0) + coeff
        if acc:
            out[key] = acc
        else:
            del out[key]
    return out


class OperatorExpr:
    """Finitely supported rational combination of boson words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            items = []
        elif isinstance(terms, dict):
            items = list(terms.items())
        else:
            items = list(terms)
        for word, _ in items:
            if not isinstance(word, str) or set(word) - {ANNIHILATION, CREATION}:
                raise ValueError(f"bad boson word {word!r}")
        self.terms = _clean_terms(items)

    @classmethod
    def from_word(cls, word: str, coeff=1) -> "OperatorExpr":
        return cls([(word, Fraction(coeff))])

    @classmethod
    def identity(cls) -> "OperatorExpr":
        return cls.from_word("")

    def __eq__(self, other):
        return isinstance(other, OperatorExpr) and self.terms == other.terms

    def __add__(self, other):
        if not isinstance(other, OperatorExpr):
            return NotImplemented
        return OperatorExpr(list(self.terms.items()) + list(other.terms.items()))

    def __mul__(self, other):
        # concatenation product, linearly extended
        if not isinstance(other, OperatorExpr):
            return NotImplemented
        return OperatorExpr(
            (w1 + w2, c1 * c2)
            for w1, c1 in self.terms.items()
            for w2, c2 in other.terms.items()
        )

    def __rmul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return OperatorExpr((w, scalar * c) for w, c in self.terms.items())

    def __str__(self):
        return format_operator(self)

    def __repr__(self):
        return f"OperatorExpr({format_operator(self)!r})"


class NormalFormOperator:
    """Map (creation power, annihilation power) -> coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            items = []
        elif isinstance(terms, dict):
            items = list(terms.items())
        else:
            items = list(terms)
        self.terms = _clean_terms(items)
        for (i, j) in self.terms:
            if i < 0 or j < 0:
                raise ValueError(f"negative power in normal monomial ({i},{j})")

    @classmethod
    def identity(cls) -> "NormalFormOperator":
        return cls([((0, 0), Fraction(1))])

    def to_expr(self) -> OperatorExpr:
        return OperatorExpr(
            (CREATION * i + ANNIHILATION * j, c) for (i, j), c in self.terms.items()
        )

    def __eq__(self, other):
        return isinstance(other, NormalFormOperator) and self.terms == other.terms

    def __str__(self):
        return format_normal(self)

    def __repr__(self):
        return f"NormalFormOperator({format_normal(self)!r})"


# canonical printing --------------------------------------------------


def _term_string(coeff: Fraction, factors: list) -> str:
    return "*".join([format_scalar(abs(coeff))] + factors)


def _join_signed(pieces) -> str:
    out = []
    for coeff, body in pieces:
        if not out:
            out.append(body if coeff > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(out) if out else "0"


def format_normal(nf: NormalFormOperator) -> str:
    pieces = []
    for (i, j) in sorted(nf.terms, reverse=True):
        coeff = nf.terms[(i, j)]
        factors = []
        if i:
            factors.append(f"(ad)^{i}")
        if j:
            factors.append(f"a^{j}")
        pieces.append((coeff, _term_string(coeff, factors)))
    return _join_signed(pieces)


def _word_factors(word: str) -> list:
    factors = []
    for m in re.finditer(r"D+|A+", word):
        run = m.group()
        symbol = f"(ad)^{len(run)}" if run[0] == CREATION else f"a^{len(run)}"
        factors.append(symbol)
    return factors


def format_operator(expr: OperatorExpr) -> str:
    pieces = []
    for word in sorted(expr.terms, key=lambda w: (len(w), w), reverse=True):
        coeff = expr.terms[word]
        pieces.append((coeff, _term_string(coeff, _word_factors(word))))
    return _join_signed(pieces)


# parsing --------------------------------------------------------------

_LEX_SPECS = (
    ("number", re.compile(r"\d+(?:/\d+)?")),
    ("creation", re.compile(r"a†|a\+|ad")),
    ("annihilation", re.compile(r"a")),
    ("lparen", re.compile(r"\(")),
    ("rparen", re.compile(r"\)")),
    ("caret", re.compile(r"\^")),
    ("star", re.compile(r"\*")),
    ("plus", re.compile(r"\+")),
    ("minus", re.compile(r"-|−")),
)


def _lex(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        for kind, pattern in _LEX_SPECS:
            m = pattern.match(text, pos)
            if m:
                tokens.append((kind, m.group(), pos))
                pos = m.end()
                break
        else:
            raise OperatorSyntaxError(f"unexpected character {text[pos]!r}", pos)
    return tokens


class _Parser:
    def __init__(self, tokens, length):
        self.tokens = tokens
        self.pos = 0
        self.length = length

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, kind=None):
        tok = self.peek()
        if tok is None or (kind is not None and tok[0] != kind):
            where = tok[2] if tok else self.length
            want = kind or "token"
            raise OperatorSyntaxError(f"expected {want}", where)
        self.pos += 1
        return tok

    def parse_expr(self) -> OperatorExpr:
        terms = []
        sign = 1
        tok = self.peek()
        if tok and tok[0] in ("plus", "minus"):
            self.take()
            sign = -1 if tok[0] == "minus" else 1
        word, coeff = self.parse_term()
        terms.append((word, sign * coeff))
        while self.peek() is not None:
            tok = self.take()
            if tok[0] == "plus":
                sign = 1
            elif tok[0] == "minus":
                sign = -1
            else:
                raise OperatorSyntaxError("expected '+' or '-'", tok[2])
            word, coeff = self.parse_term()
            terms.append((word, sign * coeff))
        return OperatorExpr(terms)

    def parse_term(self):
        coeff = Fraction(1)
        word = ""
        any_factor = False
        while True:
            tok = self.peek()
            if tok is None or tok[0] in ("plus", "minus", "rparen"):
                break
            if tok[0] == "star":
                if not any_factor:
                    raise OperatorSyntaxError("misplaced '*'", tok[2])
                self.take()
                continue
            if tok[0] == "number":
                self.take()
                coeff *= Fraction(tok[1])
                any_factor = True
                continue
            word += self.parse_factor()
            any_factor = True
        if not any_factor:
            tok = self.peek()
            raise OperatorSyntaxError("empty term", tok[2] if tok else self.length)
        return word, coeff

    def parse_factor(self) -> str:
        tok = self.take()
        if tok[0] == "creation":
            base = CREATION
        elif tok[0] == "annihilation":
            base = ANNIHILATION
        elif tok[0] == "lparen":
            base = ""
            while True:
                inner = self.peek()
                if inner is None:
                    raise OperatorSyntaxError("unclosed '('", tok[2])
                if inner[0] == "rparen":
                    self.take()
                    break
                if inner[0] == "star":
                    self.take()
                    continue
                base += self.parse_factor()
            if not base:
                raise OperatorSyntaxError("empty parentheses", tok[2])
        else:
            raise OperatorSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        tok = self.peek()
        if tok and tok[0] == "caret":
            self.take()
            exp_tok = self.take("number")
            if "/" in exp_tok[1]:
                raise OperatorSyntaxError("exponent must be an integer", exp_tok[2])
            exponent = int(exp_tok[1])
            if exponent <= 0:
                raise OperatorSyntaxError("exponent must be positive", exp_tok[2])
            return base * exponent
        return base


def parse_operator(text: str) -> OperatorExpr:
    """Parse a sum of coefficiented products of 'a', 'ad' (also 'a+', 'a†').

    Factors take optional positive integer powers with '^'; '*' between
    factors is optional; parentheses group products.  Note 'a+' counts as
    the creation symbol only when the '+' is glued to the 'a'.
    """
    tokens = _lex(text)
    if not tokens:
        raise OperatorSyntaxError("empty operator expression", 0)
    parser = _Parser(tokens, len(text))
    expr = parser.parse_expr()
    return expr


# rewriting ------------------------------------------------------------

_REWRITE_CACHE: dict = {"leftmost": {}, "rightmost": {}}


def _normal_word(word: str, strategy: str) -> dict:
    """Normal form of a single word as an integer-coefficient (i,j) map."""
    cache = _REWRITE_CACHE[strategy]
    hit = cache.get(word)
    if hit is not None:
        return hit
    pos = word.find("AD") if strategy == "leftmost" else word.rfind("AD")
    if pos < 0:
        result = {(word.count(CREATION), word.count(ANNIHILATION)): 1}
    else:
        swapped = word[:pos] + "DA" + word[pos + 2:]
        dropped = word[:pos] + word[pos + 2:]
        result = dict(_normal_word(swapped, strategy))
        for key, value in _normal_word(dropped, strategy).items():
            result[key] = result.get(key, 0) + value
    cache[word] = result
    return result


def normal_order(expr: OperatorExpr, strategy: str = "leftmost") -> NormalFormOperator:
    """Unique normal form of an operator by commutator rewriting."""
    if strategy not in _REWRITE_CACHE:
        raise ValueError(f"unknown strategy {strategy!r}")
    out: dict = {}
    for word, coeff in expr.terms.items():
        for key, mult in _normal_word(word, strategy).items():
            out[key] = out.get(key, 0) + coeff * mult
    return NormalFormOperator(out)


def multiply_normal(u: NormalFormOperator, v: NormalFormOperator) -> NormalFormOperator:
    """Product of normal forms via the closed-form monomial product."""
    out: dict = {}
    for (i1, j1), c1 in u.terms.items():
        for (i2, j2), c2 in v.terms.items():
            base = c1 * c2
            for k in range(min(j1, i2) + 1):
                coeff = base * (factorial(k) * comb(j1, k) * comb(i2, k))
                key = (i1 + i2 - k, j1 + j2 - k)
                acc = out.get(key, 0) + coeff
                if acc:
                    out[key] = acc
                else:
                    del out[key]
    return NormalFormOperator(out)


def power_normal(expr: OperatorExpr, n: int, word_limit: int = WORD_LIMIT) -> NormalFormOperator:
    """Exact normal form of the n-th power, guarded against word blowup."""
    if n < 0:
        raise ValueError("negative operator power")
    n_words = len(expr.terms)
    if n_words ** n > word_limit:
        raise BlowupLimitError(
            f"{n_words} words to the power {n} exceeds the limit of {word_limit}"
        )
    base = normal_order(expr)
    result = NormalFormOperator.identity()
    for _ in range(n):
        result = multiply_normal(result, base)
        if len(result.terms) > word_limit:
            raise BlowupLimitError("normal form exceeded the word limit")
    return result


def excess(expr: OperatorExpr) -> int:
    """Common value of i - j over the normal support; error when mixed."""
    nf = normal_order(expr)
    if not nf.terms:
        raise EgflabError("the zero operator has no excess")
    values = {i - j for (i, j) in nf.terms}
    if len(values) > 1:
        raise InhomogeneousOperatorError(values)
    return values.pop()


@dataclass
class StirlingTable:
    """Rows n -> {k: coefficient} extracted from normal forms of powers."""

    excess: int
    rows: dict

    def value(self, n: int, k: int) -> Fraction:
        return self.rows.get(n, {}).get(k, Fraction(0))

    def row(self, n: int) -> dict:
        return dict(self.rows.get(n, {}))

    def max_k(self) -> int:
        return max((k for row in self.rows.values() for k in row), default=0)

    def csv_rows(self):
        for n in sorted(self.rows):
            for k in sorted(self.rows[n]):
                yield n, k, self.rows[n][k]

    def to_dict(self) -> dict:
        return {
            "excess": self.excess,
            "rows": {
                str(n): {str(k): format_scalar(v) for k, v in sorted(row.items())}
                for n, row in sorted(self.rows.items())
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def gen_stirling(expr: OperatorExpr, n_max: int, word_limit: int = WORD_LIMIT) -> StirlingTable:
    """Generalized Stirling table of a homogeneous operator.

    For excess e >= 0 the normal form of the n-th power reads
    (a†)^(ne) · sum_k S(n,k) (a†)^k a^k, so S(n,k) sits at (ne+k, k);
    for e < 0 the mirror shape puts it at (k, k+n|e|).  Extraction must
    consume every nonzero normal term, anything else is a hard error.
    """
    e = excess(expr)
    if max(len(expr.terms), 1) ** n_max > word_limit:
        raise BlowupLimitError(
            f"{len(expr.terms)} words to the power {n_max} exceeds the limit of {word_limit}"
        )
    base = normal_order(expr)
    rows: dict = {}
    power = NormalFormOperator.identity()
    for n in range(n_max + 1):
        row: dict = {}
        for (i, j), coeff in power.terms.items():
            if e >= 0:
                k = j
                expected_i = n * e + k
                if i != expected_i:
                    raise ExtractionMismatchError(
                        f"term (a†)^{i} a^{j} of power {n} does not match shape"
                        f" (a†)^(ne+k) a^k with e={e}"
                    )
            else:
                k = i
                if j != k + n * (-e):
                    raise ExtractionMismatchError(
                        f"term (a†)^{i} a^{j} of power {n} does not match shape"
                        f" (a†)^k a^(k+n|e|) with e={e}"
                    )
            row[k] = coeff
        rows[n] = row
        if n < n_max:
            power = multiply_normal(power, base)
            if len(power.terms) > word_limit:
                raise BlowupLimitError("normal form exceeded the word limit")
    return StirlingTable(e, rows)


def verify_one_annihilation(expr: OperatorExpr, order: int) -> CheckReport:
    """Factorization T(x,y) = g(x)·exp(y·A(x)) for one-annihilation operators.

    T collects the generalized Stirling table as sum S(n,k) x^n/n! y^k.
    g is the y^0 slice, A the y^1 slice divided by g; the check asserts
    that the y^k slice equals g·A^k/k! exactly in x, for k = 2..order.
    """
    axiom = "one-annihilation-factorization"
    for word in expr.terms:
        if word.count(ANNIHILATION) != 1:
            raise NotOneAnnihilationError(
                f"word {'·'.join(_word_factors(word)) or '1'} has"
                f" {word.count(ANNIHILATION)} annihilation letters, need exactly 1"
            )
    table = gen_stirling(expr, order)

    def column(k: int) -> EgfSeries:
        return EgfSeries(tuple(table.value(n, k) for n in range(order + 1)))

    g = column(0)
    if g[0] == 0:
        raise ConstantTermError("the y=0 slice has zero constant term")
    a_series = egf_div(column(1), g)
    instances = 0
    for k in range(2, order + 1):
        instances += 1
        lhs = column(k)
        rhs = egf_scale(egf_mul(g, egf_pow(a_series, k)), Fraction(1, factorial(k)))
        for n in range(order + 1):
            if lhs[n] != rhs[n]:
                return CheckReport(
                    axiom, FAIL,
                    {"k": k, "n": n,
                     "table_side": format_scalar(lhs[n]),
                     "product_side": format_scalar(rhs[n])},
                    instances,
                )
    return CheckReport(
        axiom, PASS, None, instances,
        notes=f"g constant term {format_scalar(g[0])}",
    )
