"""Partial semigroups of labelled structures with unique atomic factorization.

A structure carries a finite support of positive-integer labels; the
partial direct sum is defined exactly when supports are disjoint, and the
unit is the unique structure with empty support.  On top of the direct-sum
axioms, Levi's property (any two 2-part decompositions of the same object
admit a common refining grid) forces every object to split into a unique
finite set of atoms.

Families plug in through :class:`StructureFamily`.  The checkers in this
module certify each axiom by exhaustive enumeration over all structures
with supports inside [1..max]; they are deliberately brute force, so that
a family's hand-written ``decompose`` is validated against the abstract
definition rather than trusted.

Partiality convention: ``direct_sum`` returns ``None`` for "undefined".
The checkers treat ``None`` as domain information, not as a failure.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from typing import Iterable, Optional, Protocol

from .combinat import set_partitions
from .errors import CapExceededError, EgflabError
from .report import FAIL, PASS, CheckReport

Support = frozenset

#: Levi search widens very fast; keep it at desk scale.
LEVI_CAP = 5


class Structure(Protocol):
    """Any hashable value with a frozenset ``support`` of labels >= 1."""

    support: frozenset


class StructureFamily(ABC):
    """Contract a concrete labelled-structure family must implement."""

    name: str = "family"
    enumeration_cap: int = 6

    @property
    @abstractmethod
    def unit(self) -> Structure:
        """The unique structure with empty support."""

    @abstractmethod
    def enumerate(self, support: Support) -> list:
        """All structures with exactly the given support, deterministic order."""

    @abstractmethod
    def direct_sum(self, w1: Structure, w2: Structure) -> Optional[Structure]:
        """Combine structures with disjoint supports; None when undefined."""

    @abstractmethod
    def decompose(self, w: Structure) -> frozenset:
        """The set of atomic pieces of ``w`` (empty exactly for the unit)."""

    @abstractmethod
    def relabel(self, w: Structure, mapping: dict) -> Structure:
        """Push ``w`` along a label bijection (mapping covers the support)."""

    @abstractmethod
    def feature_counts(self, w: Structure) -> dict:
        """Additive, relabeling-invariant integer features of ``w``."""

    @abstractmethod
    def canonical_key(self, w: Structure) -> str:
        """Canonical text encoding, used in JSON output and cache keys."""

    def is_atom(self, w: Structure) -> bool:
        if not w.support:
            return False
        return len(self.decompose(w)) == 1

    def cache_key(self) -> str:
        return self.name

    def require_size(self, size: int):
        if size > self.enumeration_cap:
            raise CapExceededError(
                f"{self.name}: support size {size} exceeds cap {self.enumeration_cap}"
            )


def direct_sum_all(family: StructureFamily, parts: Iterable) -> Optional[Structure]:
    """Fold the partial sum over ``parts``; the empty sum is the unit."""
    acc = family.unit
    for part in parts:
        acc = family.direct_sum(acc, part)
        if acc is None:
            return None
    return acc


def atoms_on(family: StructureFamily, support: Support) -> list:
    """All atoms with exactly the given support."""
    family.require_size(len(support))
    return [w for w in family.enumerate(support) if family.is_atom(w)]


def decompose_atoms(family: StructureFamily, w: Structure) -> frozenset:
    """Atomic decomposition of ``w``, with its postconditions enforced.

    The returned atoms have pairwise disjoint supports partitioning the
    support of ``w`` and re-sum to ``w``; the empty set comes back exactly
    for the unit.  Uniqueness against *all* candidate atom sets is the job
    of :func:`check_unique_factorization`.
    """
    atoms = frozenset(family.decompose(w))
    seen: set = set()
    for atom in atoms:
        if not family.is_atom(atom):
            raise EgflabError(f"{family.name}: decompose returned a non-atom piece")
        if seen & atom.support:
            raise EgflabError(f"{family.name}: decompose pieces overlap")
        seen |= atom.support
    if seen != set(w.support):
        raise EgflabError(f"{family.name}: decompose pieces do not cover the support")
    if direct_sum_all(family, sorted(atoms, key=family.canonical_key)) != w:
        raise EgflabError(f"{family.name}: decompose pieces do not re-sum to the input")
    return atoms


def _all_supports(max_size: int) -> list:
    labels = range(1, max_size + 1)
    out = []
    for r in range(max_size + 1):
        for combo in itertools.combinations(labels, r):
            out.append(frozenset(combo))
    return out


def universe(family: StructureFamily, max_size: int) -> dict:
    """Every structure with support inside [1..max_size], grouped by support."""
    family.require_size(max_size)
    return {F: list(family.enumerate(F)) for F in _all_supports(max_size)}


def _witness(family: StructureFamily, **parts) -> dict:
    out = {}
    for key, value in parts.items():
        if value is None:
            out[key] = None
        elif hasattr(value, "support"):
            out[key] = family.canonical_key(value)
        else:
            out[key] = value
    return out


def check_direct_sum_axioms(family: StructureFamily, max_support_size: int) -> CheckReport:
    """Certify the direct-sum axioms exhaustively up to the given size.

    Covers: unit uniqueness on empty support, enumeration/support
    consistency, unit laws, definedness exactly on disjoint supports,
    support additivity, closure of the sum inside the family,
    commutativity, and associativity on triples (values on all
    pairwise-disjoint structure triples; domain coincidence per support
    triple, which the exhaustive pair check makes sufficient).
    """
    axiom = "direct-sum"
    by_support = universe(family, max_support_size)
    unit = family.unit
    instances = 0

    def fail(reason, **parts):
        w = _witness(family, **parts)
        w["reason"] = reason
        return CheckReport(axiom, FAIL, w, instances)

    if by_support[frozenset()] != [unit] or unit.support:
        return fail("empty support must carry exactly the unit")
    for F, xs in by_support.items():
        for w in xs:
            instances += 1
            if w.support != F:
                return fail("enumerated structure has wrong support", structure=w)
        if len(set(xs)) != len(xs):
            return fail("duplicate structures in enumeration", support=sorted(F))

    for xs in by_support.values():
        for w in xs:
            instances += 1
            if family.direct_sum(w, unit) != w or family.direct_sum(unit, w) != w:
                return fail("unit law violated", structure=w)

    supports = list(by_support)
    member_cache = {F: set(xs) for F, xs in by_support.items()}
    for A in supports:
        xs = by_support[A]
        for B in supports:
            ys = by_support[B]
            if A.isdisjoint(B):
                union = A | B
                members = member_cache[union]
                for u in xs:
                    for v in ys:
                        instances += 1
                        s = family.direct_sum(u, v)
                        if s is None:
                            return fail("sum undefined on disjoint supports", left=u, right=v)
                        if s.support != union:
                            return fail("sum support is not the union", left=u, right=v, total=s)
                        if s not in members:
                            return fail("sum left the family", left=u, right=v, total=s)
                        if family.direct_sum(v, u) != s:
                            return fail("sum is not commutative", left=u, right=v)
            else:
                ds = family.direct_sum
                for u in xs:
                    for v in ys:
                        if ds(u, v) is not None:
                            instances += 1
                            return fail("sum defined on overlapping supports", left=u, right=v)
                instances += len(xs) * len(ys)

    # associativity values on every pairwise-disjoint structure triple
    for A in supports:
        for B in supports:
            if not A.isdisjoint(B):
                continue
            for C in supports:
                if not C.isdisjoint(A) or not C.isdisjoint(B):
                    continue
                for u in by_support[A]:
                    for v in by_support[B]:
                        uv = family.direct_sum(u, v)
                        for w in by_support[C]:
                            instances += 1
                            left = family.direct_sum(uv, w)
                            vw = family.direct_sum(v, w)
                            right = None if vw is None else family.direct_sum(u, vw)
                            if left is None or left != right:
                                return fail("associativity violated", a=u, b=v, c=w)

    # domain coincidence of the two groupings, one representative per support
    reps = {F: xs[0] for F, xs in by_support.items() if xs}
    for A, B, C in itertools.product(reps, repeat=3):
        u, v, w = reps[A], reps[B], reps[C]
        instances += 1
        expected = A.isdisjoint(B) and C.isdisjoint(A | B)
        uv = family.direct_sum(u, v)
        left_defined = uv is not None and family.direct_sum(uv, w) is not None
        vw = family.direct_sum(v, w)
        right_defined = vw is not None and family.direct_sum(u, vw) is not None
        if left_defined != expected or right_defined != expected:
            return fail("grouping domains differ", a=u, b=v, c=w)

    return CheckReport(axiom, PASS, None, instances)


def _decomposition_index(family: StructureFamily, by_support: dict) -> dict:
    """Map each structure to all its ordered 2-part decompositions."""
    index: dict = {}
    supports = list(by_support)
    for A in supports:
        for B in supports:
            if not A.isdisjoint(B):
                continue
            for u in by_support[A]:
                for v in by_support[B]:
                    s = family.direct_sum(u, v)
                    if s is not None:
                        index.setdefault(s, []).append((u, v))
    return index


def _has_levi_refinement(family, w1, w2, u1, u2, index) -> bool:
    s11 = w1.support & u1.support
    s21 = w2.support & u1.support
    row1 = [(x, y) for x, y in index.get(w1, ()) if x.support == s11]
    row2 = [(x, y) for x, y in index.get(w2, ()) if x.support == s21]
    for x11, x12 in row1:
        for x21, x22 in row2:
            if (
                family.direct_sum(x11, x21) == u1
                and family.direct_sum(x12, x22) == u2
            ):
                return True
    return False


def check_levi(family: StructureFamily, max_support_size: int) -> CheckReport:
    """Search for a refining grid behind every pair of 2-part decompositions."""
    axiom = "levi"
    if max_support_size > LEVI_CAP:
        raise CapExceededError(
            f"levi check capped at support size {LEVI_CAP}, got {max_support_size}"
        )
    by_support = universe(family, max_support_size)
    index = _decomposition_index(family, by_support)
    instances = 0
    for w, decomps in index.items():
        for w1, w2 in decomps:
            for u1, u2 in decomps:
                instances += 1
                if not _has_levi_refinement(family, w1, w2, u1, u2, index):
                    witness = _witness(
                        family, whole=w, left1=w1, left2=w2, right1=u1, right2=u2
                    )
                    witness["reason"] = "no refining grid"
                    return CheckReport(axiom, FAIL, witness, instances)
    return CheckReport(axiom, PASS, None, instances)


def check_unique_factorization(family: StructureFamily, max_support_size: int) -> CheckReport:
    """Every structure must equal the sum of exactly one set of atoms.

    For each support F, every partition of F combined with every choice of
    atoms on its parts yields one candidate atom set; counting the sums
    must hit each structure exactly once.  The family's own ``decompose``
    is validated against this census.
    """
    axiom = "unique-factorization"
    by_support = universe(family, max_support_size)
    atoms_cache: dict = {}

    def atoms_for(part: frozenset) -> list:
        if part not in atoms_cache:
            atoms_cache[part] = [
                w for w in by_support[part] if family.is_atom(w)
            ]
        return atoms_cache[part]

    instances = 0
    for F, xs in by_support.items():
        counts: dict = {}
        for blocks in set_partitions(sorted(F)):
            atom_choices = [atoms_for(frozenset(block)) for block in blocks]
            if any(not choices for choices in atom_choices):
                continue
            for combo in itertools.product(*atom_choices):
                s = direct_sum_all(family, combo)
                counts[s] = counts.get(s, 0) + 1
        members = set(xs)
        for s in counts:
            if s not in members:
                witness = _witness(family, total=s)
                witness["reason"] = "atom sum left the family"
                return CheckReport(axiom, FAIL, witness, instances)
        for w in xs:
            instances += 1
            n_decompositions = counts.get(w, 0)
            if n_decompositions != 1:
                witness = _witness(family, structure=w)
                witness["reason"] = (
                    "no atomic decomposition"
                    if n_decompositions == 0
                    else f"{n_decompositions} distinct atom sets"
                )
                return CheckReport(axiom, FAIL, witness, instances)
            pieces = family.decompose(w)
            if direct_sum_all(family, sorted(pieces, key=family.canonical_key)) != w:
                witness = _witness(family, structure=w)
                witness["reason"] = "family decompose disagrees with the census"
                return CheckReport(axiom, FAIL, witness, instances)
    return CheckReport(axiom, PASS, None, instances)
