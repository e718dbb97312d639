"""Truncated exponential generating series over an exact coefficient ring.

A series is stored as coefficients c_0..c_N where c_n multiplies z^n/n!.
Keeping the factorial in the basis means integer inputs stay integral
through exp/log/product, which keeps the output tables readable and the
identities exact.

Two exponentials are provided on purpose: ``egf_exp_partition`` evaluates
the partition sum directly (slow, Bell-number sized, used as an oracle)
and ``egf_exp`` uses the standard derivative recurrence.  They must agree
on every input; the log inverts the recurrence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .combinat import set_partitions
from .errors import ConstantTermError
from .rings import RingElem, format_ring_elem, parse_ring_elem


@dataclass(frozen=True)
class EgfSeries:
    """Coefficients c_0..c_N of a series sum(c_n * z^n/n!, n = 0..N)."""

    coeffs: tuple

    def __post_init__(self):
        if not isinstance(self.coeffs, tuple):
            object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) == 0:
            raise ValueError("a series needs at least the constant coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> RingElem:
        return self.coeffs[n]

    def truncate(self, order: int) -> "EgfSeries":
        if order >= self.order:
            return self
        return EgfSeries(self.coeffs[: order + 1])

    def __str__(self):
        return "(" + ", ".join(format_ring_elem(c) for c in self.coeffs) + ")"


def egf_from(values: Iterable[RingElem]) -> EgfSeries:
    return EgfSeries(tuple(values))


def egf_zero(order: int) -> EgfSeries:
    return EgfSeries((Fraction(0),) * (order + 1))


def egf_one(order: int) -> EgfSeries:
    return EgfSeries((Fraction(1),) + (Fraction(0),) * order)


def egf_z(order: int) -> EgfSeries:
    coeffs = [Fraction(0)] * (order + 1)
    if order >= 1:
        coeffs[1] = Fraction(1)
    return EgfSeries(tuple(coeffs))


def egf_add(f: EgfSeries, g: EgfSeries) -> EgfSeries:
    order = min(f.order, g.order)
    return EgfSeries(tuple(f[n] + g[n] for n in range(order + 1)))


def egf_sub(f: EgfSeries, g: EgfSeries) -> EgfSeries:
    order = min(f.order, g.order)
    return EgfSeries(tuple(f[n] - g[n] for n in range(order + 1)))


def egf_scale(f: EgfSeries, scalar) -> EgfSeries:
    return EgfSeries(tuple(c * scalar for c in f.coeffs))


def egf_neg(f: EgfSeries) -> EgfSeries:
    return egf_scale(f, -1)


def egf_mul(f: EgfSeries, g: EgfSeries) -> EgfSeries:
    # binomial convolution: in the z^n/n! basis (fg)_n = sum C(n,k) f_k g_{n-k}
    order = min(f.order, g.order)
    out = []
    for n in range(order + 1):
        acc = Fraction(0)
        for k in range(n + 1):
            acc = acc + comb(n, k) * (f[k] * g[n - k])
        out.append(acc)
    return EgfSeries(tuple(out))


def _require_zero_constant(f: EgfSeries):
    if f[0] != 0:
        raise ConstantTermError("exp needs a series with zero constant term")


def egf_exp_partition(f: EgfSeries) -> EgfSeries:
    """Exponential by direct partition summation (oracle; Bell-sized work).

    a_n is the sum over set partitions of [1..n] of the product of f_{|block|}.
    """
    _require_zero_constant(f)
    out: list[RingElem] = [Fraction(1)]
    for n in range(1, f.order + 1):
        acc = Fraction(0)
        for blocks in set_partitions(range(n)):
            term = Fraction(1)
            for block in blocks:
                term = term * f[len(block)]
            acc = acc + term
        out.append(acc)
    return EgfSeries(tuple(out))


def egf_exp(f: EgfSeries) -> EgfSeries:
    """Exponential via the recurrence a_{n+1} = sum C(n,k) f_{k+1} a_{n-k}."""
    _require_zero_constant(f)
    a: list[RingElem] = [Fraction(1)]
    for n in range(f.order):
        acc = Fraction(0)
        for k in range(n + 1):
            acc = acc + comb(n, k) * (f[k + 1] * a[n - k])
        a.append(acc)
    return EgfSeries(tuple(a))


def egf_log(a: EgfSeries) -> EgfSeries:
    """Inverse of egf_exp: the series f with f_0 = 0 and exp(f) = a."""
    if a[0] != 1:
        raise ConstantTermError("log needs a series with unit constant term")
    f: list[RingElem] = [Fraction(0)]
    for n in range(a.order):
        acc = a[n + 1]
        for k in range(n):
            acc = acc - comb(n, k) * (f[k + 1] * a[n - k])
        f.append(acc)
    return EgfSeries(tuple(f))


def egf_div(f: EgfSeries, g: EgfSeries) -> EgfSeries:
    """Quotient series q with q*g = f; g must have an invertible scalar g_0."""
    g0 = g[0]
    if not isinstance(g0, (int, Fraction)) or g0 == 0:
        raise ConstantTermError("division needs a nonzero scalar constant term")
    inv = Fraction(1, 1) / Fraction(g0)
    order = min(f.order, g.order)
    q: list[RingElem] = []
    for n in range(order + 1):
        acc = f[n]
        for k in range(n):
            acc = acc - comb(n, k) * (q[k] * g[n - k])
        q.append(acc * inv)
    return EgfSeries(tuple(q))


def egf_pow(f: EgfSeries, exponent: int) -> EgfSeries:
    if exponent < 0:
        raise ValueError("negative series power")
    result = egf_one(f.order)
    for _ in range(exponent):
        result = egf_mul(result, f)
    return result


def series_to_json(f: EgfSeries) -> str:
    return json.dumps(
        {"order": f.order, "coefficients": [format_ring_elem(c) for c in f.coeffs]}
    )


def series_from_json(text: str) -> EgfSeries:
    data = json.loads(text)
    coeffs = tuple(parse_ring_elem(c) for c in data["coefficients"])
    if len(coeffs) != data["order"] + 1:
        raise ValueError("order field does not match coefficient count")
    return EgfSeries(coeffs)
