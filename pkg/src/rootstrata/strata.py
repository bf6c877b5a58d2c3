"""Invariants of closed subsets and torsion-point analysis.

Points of the compact torus are vectors in X_* coordinates whose entries are
formal values ``q + sum c_i * t_i``: a rational part ``q`` taken mod 1 plus
rational multiples of independent transcendentals ``t_i``.  A point of the
elliptic model is a pair of such vectors.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from . import lattice
from .errors import BudgetExceeded, DimensionMismatch, ParseError
from .root_datum import RootDatum, cartan_type_of
from .subsystems import (CaseTag, ClosedSubset, rational_span_intersection,
                         simple_system, subsystem_components)
from .weyl import (WeylElement, WeylGroup, component_permutation_image_order,
                   quotient_group_info)

DEFAULT_COUNT_BUDGET = 10**6


@dataclass(frozen=True)
class FormalValue:
    rational: Fraction = Fraction(0)
    transcendental: tuple[tuple[str, Fraction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rational", Fraction(self.rational) % 1)
        t = {}
        for name, c in self.transcendental:
            t[name] = t.get(name, Fraction(0)) + Fraction(c)
        object.__setattr__(self, "transcendental",
                           tuple(sorted((k, v) for k, v in t.items() if v)))

    @classmethod
    def parse(cls, text: str) -> "FormalValue":
        s = text.replace(" ", "")
        if not s:
            raise ParseError("empty coordinate")
        terms = re.findall(r"[+-]?[^+-]+", s)
        if "".join(terms) != s:
            raise ParseError(f"cannot parse coordinate {text!r}")
        q = Fraction(0)
        trans = []
        for term in terms:
            m = re.fullmatch(r"([+-]?)(?:(\d+(?:/\d+)?)\*?)?(t\d+)", term)
            try:
                if m:
                    c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
                    trans.append((m.group(3), -c if m.group(1) == "-" else c))
                else:
                    q += Fraction(term)
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"cannot parse coordinate {text!r}") from None
        return cls(q, tuple(trans))

    def is_integral(self) -> bool:
        return self.rational == 0 and not self.transcendental

    def __add__(self, other: "FormalValue") -> "FormalValue":
        return FormalValue(self.rational + other.rational,
                           self.transcendental + other.transcendental)

    def scale(self, k: int) -> "FormalValue":
        return FormalValue(self.rational * k,
                           tuple((n, c * k) for n, c in self.transcendental))

    def __str__(self) -> str:
        parts = [str(self.rational)] if self.rational or not self.transcendental else []
        for n, c in self.transcendental:
            parts.append(n if c == 1 else f"{c}*{n}")
        return "+".join(parts)


@dataclass(frozen=True)
class TorusPoint:
    """A point of (X_* tensor R)/X_*, coordinates in the X_* basis."""

    coordinates: tuple[FormalValue, ...]

    @classmethod
    def parse(cls, text: str) -> "TorusPoint":
        return cls(tuple(FormalValue.parse(t) for t in text.split(",")))

    @classmethod
    def of(cls, values: Iterable) -> "TorusPoint":
        out = []
        for v in values:
            if isinstance(v, FormalValue):
                out.append(v)
            elif isinstance(v, str):
                out.append(FormalValue.parse(v))
            else:
                out.append(FormalValue(Fraction(v)))
        return cls(tuple(out))

    @classmethod
    def zero(cls, rank: int) -> "TorusPoint":
        return cls(tuple(FormalValue() for _ in range(rank)))

    @property
    def dimension(self) -> int:
        return len(self.coordinates)

    def pair(self, alpha: Sequence[int]) -> FormalValue:
        out = FormalValue()
        for a, x in zip(alpha, self.coordinates):
            if a:
                out = out + x.scale(a)
        return out

    def transform(self, comatrix: Sequence[Sequence[int]]) -> "TorusPoint":
        out = []
        for row in comatrix:
            v = FormalValue()
            for a, x in zip(row, self.coordinates):
                if a:
                    v = v + x.scale(int(a))
            out.append(v)
        return TorusPoint(tuple(out))

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coordinates)


@dataclass(frozen=True)
class EllipticPoint:
    """A point of the elliptic torus, modelled by two compact-torus points."""

    x1: TorusPoint
    x2: TorusPoint

    def __post_init__(self):
        if self.x1.dimension != self.x2.dimension:
            raise DimensionMismatch("x1 and x2 have different lengths")

    @property
    def dimension(self) -> int:
        return self.x1.dimension

    def transform(self, comatrix) -> "EllipticPoint":
        return EllipticPoint(self.x1.transform(comatrix),
                             self.x2.transform(comatrix))

    def __str__(self) -> str:
        return f"({self.x1}; {self.x2})"


Point = Union[TorusPoint, EllipticPoint]


def _components(p: Point) -> tuple[TorusPoint, ...]:
    return (p.x1, p.x2) if isinstance(p, EllipticPoint) else (p,)


def _check_dim(d: RootDatum, p: Point) -> None:
    if p.dimension != d.rank:
        raise DimensionMismatch(
            f"point has {p.dimension} coordinates, datum has rank {d.rank}")


def sigma_of_point(d: RootDatum, p: Point) -> ClosedSubset:
    """Roots alpha with <alpha, x> integral (for every component of p)."""
    _check_dim(d, p)
    out = []
    for i, r in enumerate(d.roots):
        if all(x.pair(r).is_integral() for x in _components(p)):
            out.append(i)
    return ClosedSubset(d, tuple(out))


def _integer_encoding(p: Point) -> tuple[np.ndarray, int]:
    """Encode p as integer columns: rational parts scaled by a common
    denominator D (to be compared mod D) and transcendental parts (exact)."""
    comps = _components(p)
    den = 1
    names = sorted({n for x in comps for c in x.coordinates
                    for n, _ in c.transcendental})
    for x in comps:
        for c in x.coordinates:
            den = math.lcm(den, c.rational.denominator)
            for _, v in c.transcendental:
                den = math.lcm(den, v.denominator)
    cols = []
    for x in comps:
        cols.append([int(c.rational * den) for c in x.coordinates])
        for n in names:
            cols.append([int(dict(c.transcendental).get(n, 0) * den)
                         for c in x.coordinates])
    return np.array(cols, dtype=object).T, den


def _stabilizer_indices(w: WeylGroup, p: Point) -> list[int]:
    _check_dim(w.datum, p)
    comps = _components(p)
    cols, den = _integer_encoding(p)
    ntrans = cols.shape[1] // len(comps) - 1
    # rational columns compare mod den, transcendental columns exactly
    is_rational = np.array(([True] + [False] * ntrans) * len(comps))
    v = cols.astype(np.int64) if cols.size else np.zeros((w.datum.rank, 0),
                                                         np.int64)
    imgs = np.einsum("kij,jc->kic", w.comats, v)
    diff = imgs - v[None, :, :]
    diff[:, :, is_rational] %= den
    return np.nonzero((diff == 0).all(axis=(1, 2)))[0].tolist()


def point_stabilizer(w: WeylGroup, p: Point) -> list[WeylElement]:
    """{w : w.p = p}, acting on X_* coordinates mod X_*."""
    return [w.element(k) for k in _stabilizer_indices(w, p)]


def act_on_point(w: WeylGroup, k: int, p: Point) -> Point:
    return p.transform(w.comats[k].tolist())


def component_group_order(d: RootDatum, w: WeylGroup, p: Point) -> int:
    """|Stab_W(p)| / |W_{Sigma_p}|: order of the automorphism component group."""
    stab = _stabilizer_indices(w, p)
    sp = sigma_of_point(d, p)
    wsig = w.reflection_subgroup_indices(sp.indices)
    q, r = divmod(len(stab), len(wsig))
    assert r == 0
    return q


def levi_envelope(s: ClosedSubset) -> ClosedSubset:
    """Roots in the rational span of ``s``: the smallest Levi containing it."""
    return ClosedSubset(s.datum, rational_span_intersection(s.datum, s.indices))


def refined_geq(s1: ClosedSubset, s2: ClosedSubset) -> bool:
    """s1 contains s2 and s2 = s1 intersected with the Levi envelope of s2."""
    a, b = set(s1.indices), set(s2.indices)
    if not b <= a:
        return False
    return a & set(levi_envelope(s2).indices) == b


def class_geq(w: WeylGroup, s1: ClosedSubset, s2: ClosedSubset) -> bool:
    """Some W-translate of s1 is refined-above s2."""
    d = s1.datum
    for row in w.images(s1.indices):
        if refined_geq(ClosedSubset(d, tuple(int(x) for x in row)), s2):
            return True
    return False


def closure_strata(d: RootDatum, w: WeylGroup, s: ClosedSubset,
                   elliptic: Sequence[ClosedSubset]) -> list[ClosedSubset]:
    """Elliptic classes whose strata lie in the closure of the stratum of s."""
    return [c for c in elliptic if class_geq(w, c, s)]


def _root_lengths_label(d: RootDatum, s: ClosedSubset) -> str:
    comps = subsystem_components(s)
    if not comps:
        return "∅"
    lengths = d.squared_lengths
    parts = []
    for comp in comps:
        t = cartan_type_of(d, comp.simple_indices).components[0]
        label = f"{t[0]}{t[1]}"
        amb = d.root_component[comp.simple_indices[0]]
        amb_lengths = {lengths[i] for i in range(d.n_roots)
                       if d.root_component[i] == amb}
        if len(amb_lengths) > 1 and t[0] in "ADE":
            long_ = lengths[comp.simple_indices[0]] == max(amb_lengths)
            label += "(long)" if long_ else "(short)"
        parts.append(label)
    return "+".join(sorted(parts))


@dataclass(frozen=True)
class SubsystemReport:
    canonical: tuple[int, ...]
    positive_roots: tuple[tuple[int, ...], ...]
    cartan_label: str
    decorated_label: str
    rank: int
    center: lattice.QuotientStructure
    pi1: tuple[int, ...]
    w_sigma_order: int
    normalizer_order: int
    relative_order: int
    relative_is_abelian: bool
    relative_abelian_invariants: tuple[int, ...] | None
    component_permutation_image: int
    is_levi: bool
    is_isolated: bool
    case_tags: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "cartan_label": self.cartan_label,
            "decorated_label": self.decorated_label,
            "positive_roots": [list(r) for r in self.positive_roots],
            "canonical_indices": list(self.canonical),
            "rank": self.rank,
            "center": self.center.to_dict(),
            "pi1": list(self.pi1),
            "w_sigma_order": self.w_sigma_order,
            "normalizer_order": self.normalizer_order,
            "relative_order": self.relative_order,
            "relative_is_abelian": self.relative_is_abelian,
            "relative_abelian_invariants": (
                None if self.relative_abelian_invariants is None
                else list(self.relative_abelian_invariants)),
            "component_permutation_image": self.component_permutation_image,
            "is_levi": self.is_levi,
            "is_isolated": self.is_isolated,
            "case_tags": list(self.case_tags),
        }


def is_isolated(report: SubsystemReport, d: RootDatum) -> bool:
    """Refined-order maximality: rank of Z Sigma equals rank of Z Phi."""
    return report.center.free_rank == d.rank - d.semisimple_rank


def full_report(d: RootDatum, w: WeylGroup, s: ClosedSubset,
                families: dict[str, set[tuple[int, ...]]] | None = None,
                ) -> SubsystemReport:
    """All invariants of the W-class of ``s``.

    ``families`` maps a case tag to the canonical forms of that family; when
    omitted the case tags are left empty.
    """
    canon = w.canonical_form(s.indices)
    simples = simple_system(s)
    center = lattice.quotient_structure([d.roots[i] for i in simples], d.rank)
    pi1 = lattice.saturation_quotient([d.coroots[i] for i in simples],
                                      lattice.identity(d.rank))
    wsig = w.reflection_subgroup_indices(s.indices)
    norm = w.stabilizer_indices(s.indices)
    info = quotient_group_info(w, norm, wsig)
    comps = [c.root_indices for c in subsystem_components(s)]
    perm_image = (component_permutation_image_order(w, norm, comps)
                  if comps else 1)
    rank = len(simples)
    tags = ()
    if families:
        tags = tuple(t.value for t in CaseTag
                     if canon in families.get(t.value, ()))
    report = SubsystemReport(
        canonical=canon,
        positive_roots=tuple(d.coefficients[i] for i in
                             ClosedSubset(d, canon).positive()),
        cartan_label=cartan_type_of(d, simples).label,
        decorated_label=_root_lengths_label(d, s),
        rank=rank,
        center=center,
        pi1=tuple(pi1),
        w_sigma_order=len(wsig),
        normalizer_order=len(norm),
        relative_order=info.order,
        relative_is_abelian=info.is_abelian,
        relative_abelian_invariants=info.abelian_invariants,
        component_permutation_image=perm_image,
        is_levi=levi_envelope(s).indices == s.indices,
        is_isolated=rank == d.semisimple_rank,
        case_tags=tags,
    )
    return report


REGULARITY_CLASSES = ("nonregular", "regular", "maximally_regular")


def regularity_class(d: RootDatum, w: WeylGroup, sH: ClosedSubset,
                     p: Point) -> str:
    """Root-theoretic regularity of ``p`` with respect to the subsystem sH."""
    sp = set(sigma_of_point(d, p).indices)
    h = set(sH.indices)
    if not sp <= h:
        return "nonregular"
    if sp == h:
        stab = set(_stabilizer_indices(w, p))
        if stab <= set(w.reflection_subgroup_indices(sH.indices)):
            return "maximally_regular"
    return "regular"


@dataclass(frozen=True)
class StratumCount:
    modulus: int
    central_count: int
    regular_central_count: int

    def to_dict(self) -> dict:
        return {"modulus": self.modulus, "central_count": self.central_count,
                "regular_central_count": self.regular_central_count}


def _torsion_masks(d: RootDatum, n: int, budget: int) -> np.ndarray:
    """Vanishing-root masks of every point of (1/N)X_*/X_*, one row each."""
    if n < 1:
        raise ValueError("modulus must be >= 1")
    size = n ** d.rank
    if size > budget:
        raise BudgetExceeded(f"{size} grid points exceed budget {budget}")
    grid = np.array(list(itertools.product(range(n), repeat=d.rank)),
                    dtype=np.int64).reshape(size, d.rank)
    roots = np.array(d.roots, dtype=np.int64).reshape(d.n_roots, d.rank)
    return (grid @ roots.T) % n == 0


def count_central_points(d: RootDatum, w: WeylGroup | None, s: ClosedSubset,
                         n: int, budget: int = DEFAULT_COUNT_BUDGET,
                         ) -> StratumCount:
    """Count N-torsion elliptic points p with Sigma_p containing / equal to s.

    Every pair (x1, x2) of (1/N)-points is accounted for; pairs are grouped by
    the vanishing set of each coordinate.
    """
    masks = _torsion_masks(d, n, budget)
    target = np.zeros(d.n_roots, dtype=bool)
    target[list(s.indices)] = True
    uniq, counts = np.unique(masks, axis=0, return_counts=True)
    central = regular = 0
    for (m1, c1), (m2, c2) in itertools.product(zip(uniq, counts), repeat=2):
        both = m1 & m2
        if (both >= target).all():
            central += int(c1) * int(c2)
            if (both == target).all():
                regular += int(c1) * int(c2)
    return StratumCount(n, central, regular)


def central_count_formula(center: lattice.QuotientStructure, n: int) -> int:
    """#Hom(X*/Z Sigma, (Z/N)^2) from invariant factors."""
    out = n ** (2 * center.free_rank)
    for f in center.invariant_factors:
        out *= math.gcd(f, n) ** 2
    return out
