"""Multiplicative equivariant statistics, class sums, and the exponential formula.

A statistic assigns to each structure a ring value of the shape
``prod(var**feature(w))`` built from additive integer features, so
multiplicativity over disjoint direct sums comes from feature additivity.
Class sums aggregate a statistic over every structure with a fixed
support; stringing class sums over [1..n] together gives the
exponential generating series of a family, and the central identity
states that the series of a whole family is the exponential of the
series of its atoms (shifted by c(unit) - 1 when the statistic does not
send the unit to 1).

Improper statistics (unit value 0) vanish identically; every pipeline
here flags them and short-circuits to the zero series rather than
producing a silent all-zero table.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .egf import EgfSeries, egf_exp, egf_log, egf_zero
from .errors import UnknownFeatureError
from .families import feature_counts
from .report import FAIL, IMPROPER, PASS, CheckReport
from .rings import MultiPolynomial, RingElem, format_ring_elem, parse_ring_elem
from .sfd import StructureFamily, atoms_on, universe


@dataclass(frozen=True)
class Statistic:
    """Monomial statistic: product of variable**feature over listed pairs.

    ``unit_value`` is the value on the unit structure; anything other
    than 1 makes the statistic improper (0) or non-multiplicative, and
    the checkers flag it.
    """

    monomials: tuple = ()
    unit_value: Fraction = Fraction(1)

    @classmethod
    def parse(cls, spec: str) -> "Statistic":
        """Parse the mini-language: ``1`` or comma-separated feature=variable."""
        spec = spec.strip()
        if spec == "1":
            return cls()
        pairs = []
        for chunk in spec.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            if "=" not in chunk:
                raise ValueError(f"bad statistic component {chunk!r}, want feature=variable")
            feature, var = (part.strip() for part in chunk.split("=", 1))
            if not feature or not var:
                raise ValueError(f"bad statistic component {chunk!r}")
            pairs.append((feature, var))
        if not pairs:
            raise ValueError(f"empty statistic spec {spec!r}")
        return cls(tuple(pairs))

    def is_improper(self) -> bool:
        return self.unit_value == 0

    def key(self) -> str:
        if not self.monomials:
            body = "1"
        else:
            body = ",".join(f"{feat}={var}" for feat, var in self.monomials)
        if self.unit_value != 1:
            body += f";unit={self.unit_value}"
        return body

    def value(self, family: StructureFamily, w) -> RingElem:
        if self.unit_value == 0:
            return Fraction(0)
        if not self.monomials:
            return Fraction(self.unit_value)
        counts = family.feature_counts(w)
        powers: dict = {}
        for feat, var in self.monomials:
            if feat not in counts:
                raise UnknownFeatureError(
                    f"{family.name} has no feature {feat!r}; available: {sorted(counts)}"
                )
            powers[var] = powers.get(var, 0) + counts[feat]
        powers = {var: exp for var, exp in powers.items() if exp}
        if not powers:
            return Fraction(self.unit_value)
        return MultiPolynomial.monomial(powers, self.unit_value)


#: Plain counting: c(w) = 1 for every structure.
COUNT = Statistic()


@dataclass
class ClassSum:
    value: RingElem
    support_size: int
    class_descriptor: str


def class_sum(
    family: StructureFamily,
    stat: Statistic,
    support,
    atoms_only: bool = False,
) -> ClassSum:
    """Exact sum of the statistic over all structures (or atoms) on ``support``."""
    support = frozenset(support)
    family.require_size(len(support))
    descriptor = f"{family.name}{'[atoms]' if atoms_only else ''}"
    if stat.is_improper():
        return ClassSum(Fraction(0), len(support), descriptor)
    pool = atoms_on(family, support) if atoms_only else family.enumerate(support)
    acc: RingElem = Fraction(0)
    for w in pool:
        acc = acc + stat.value(family, w)
    return ClassSum(acc, len(support), descriptor)


def check_multiplicativity(
    family: StructureFamily, stat: Statistic, max_support_size: int
) -> CheckReport:
    """c(u + v) = c(u)c(v) over every defined pair up to the size cap."""
    axiom = "multiplicativity"
    by_support = universe(family, max_support_size)
    instances = 0
    if stat.is_improper():
        # improper statistics vanish identically: c(w) = c(w + unit) = 0
        for xs in by_support.values():
            for w in xs:
                instances += 1
                if stat.value(family, w) != 0:
                    return CheckReport(
                        axiom,
                        FAIL,
                        {"reason": "improper statistic with nonzero value",
                         "structure": family.canonical_key(w)},
                        instances,
                    )
        return CheckReport(
            axiom, IMPROPER, None, instances, notes="unit value 0: statistic is identically zero"
        )
    unit_val = stat.value(family, family.unit)
    if unit_val != 1:
        return CheckReport(
            axiom, FAIL,
            {"reason": f"proper statistic must send the unit to 1, got {unit_val}"},
            instances,
        )
    supports = list(by_support)
    for A in supports:
        for B in supports:
            if not A.isdisjoint(B):
                continue
            for u in by_support[A]:
                cu = stat.value(family, u)
                for v in by_support[B]:
                    instances += 1
                    s = family.direct_sum(u, v)
                    if stat.value(family, s) != cu * stat.value(family, v):
                        return CheckReport(
                            axiom, FAIL,
                            {"left": family.canonical_key(u),
                             "right": family.canonical_key(v)},
                            instances,
                        )
    return CheckReport(axiom, PASS, None, instances)


def check_equivariance(
    family: StructureFamily,
    stat: Statistic,
    n: int,
    atoms_only: bool = True,
) -> CheckReport:
    """Class sums must agree across same-cardinality supports.

    Tested on [1..n], [2..n+1] and a deterministic pseudo-random n-subset
    of [1..2n].  ``atoms_only=True`` is the stated axiom; False checks the
    stronger statement on all structures.
    """
    axiom = "equivariance" + ("" if atoms_only else "-all-structures")
    rng = random.Random(f"{family.name}:{stat.key()}:{n}")
    candidates = [
        frozenset(range(1, n + 1)),
        frozenset(range(2, n + 2)),
        frozenset(rng.sample(range(1, 2 * n + 1), n)) if n else frozenset(),
    ]
    sums = [class_sum(family, stat, F, atoms_only).value for F in candidates]
    instances = len(candidates)
    for F, value in zip(candidates[1:], sums[1:]):
        if value != sums[0]:
            return CheckReport(
                axiom, FAIL,
                {"support": sorted(F),
                 "value": format_ring_elem(value),
                 "reference": format_ring_elem(sums[0])},
                instances,
            )
    status = IMPROPER if stat.is_improper() else PASS
    return CheckReport(axiom, status, None, instances)


def egf_of(
    family: StructureFamily,
    stat: Statistic,
    atoms_only: bool = False,
    order: int = 8,
    cache=None,
) -> EgfSeries:
    """Series whose n-th coefficient is the class sum on [1..n]."""
    family.require_size(order)
    if stat.is_improper():
        return egf_zero(order)
    coeffs = []
    for n in range(order + 1):
        key = f"{family.cache_key()}|{stat.key()}|{'atoms' if atoms_only else 'all'}|n={n}"
        cached = cache.get(key) if cache is not None else None
        if cached is not None:
            coeffs.append(parse_ring_elem(cached))
            continue
        value = class_sum(family, stat, range(1, n + 1), atoms_only).value
        if cache is not None:
            cache.put(key, format_ring_elem(value))
        coeffs.append(value)
    return EgfSeries(tuple(coeffs))


def verify_exponential_formula(
    family: StructureFamily,
    stat: Statistic,
    order: int,
    cache=None,
) -> CheckReport:
    """Check EGF(whole family) = c(unit) - 1 + exp(EGF(atoms)) coefficientwise.

    Both sides run on independent enumerations: the left sums the statistic
    over every structure per support size, the right only over atoms and
    then applies the series exponential.
    """
    axiom = "exponential-formula"
    total = egf_of(family, stat, atoms_only=False, order=order, cache=cache)
    atom_series = egf_of(family, stat, atoms_only=True, order=order, cache=cache)
    shift = Fraction(stat.unit_value) - 1
    expd = egf_exp(atom_series)
    rhs = EgfSeries((expd[0] + shift,) + expd.coeffs[1:])
    notes = None
    if stat.is_improper():
        notes = "improper statistic: both sides identically zero"
    elif shift == 0:
        notes = "proper statistic: pure exponential form"
    for n in range(order + 1):
        if total[n] != rhs[n]:
            return CheckReport(
                axiom, FAIL,
                {"n": n,
                 "family_side": format_ring_elem(total[n]),
                 "exp_side": format_ring_elem(rhs[n])},
                n + 1,
                notes=notes,
            )
    return CheckReport(axiom, PASS, None, order + 1, notes=notes)


def atoms_egf_from_total(total: EgfSeries) -> EgfSeries:
    """Recover the atom series from a whole-family series (series log)."""
    return egf_log(total)


def verify_stirling_identity(order: int = 7) -> CheckReport:
    """Bivariate block-count identity for set partitions.

    The left side collects, per support size n, the polynomial
    sum_k S2(n, k) y^k straight from partition enumeration; the right side
    is the series exponential of the series with every coefficient y
    (n >= 1), i.e. exp(y*(e^z - 1)).  Exact equality to the given order.
    """
    from .families import PARTITIONS

    axiom = "stirling-bivariate-identity"
    blocks_stat = Statistic((("blocks", "y"),))
    left = egf_of(PARTITIONS, blocks_stat, atoms_only=False, order=order)
    y = MultiPolynomial.variable("y")
    right = egf_exp(EgfSeries((Fraction(0),) + (y,) * order))
    for n in range(order + 1):
        if left[n] != right[n]:
            return CheckReport(
                axiom, FAIL,
                {"n": n,
                 "enumeration_side": format_ring_elem(left[n]),
                 "exp_side": format_ring_elem(right[n])},
                n + 1,
            )
    return CheckReport(axiom, PASS, None, order + 1)
