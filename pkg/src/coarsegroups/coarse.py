"""Entourage algebra on finite relations and controlledness probes.

An entourage is a finite set of ordered element pairs.  Infinite unions
from the source constructions are replaced by indexed entourage families
probed at horizons; controlledness of a family shows up as a bounded or
growing trend of per-index observed quantities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .bornology import BornologyBasis, member_depth
from .groups import GroupSpec, element_key
from .metrics import (
    HORIZON,
    MetricEvaluator,
    classify_trend,
    is_horizon,
    ladder_prefixes,
)


@dataclass(frozen=True)
class Entourage:
    pairs: frozenset

    @staticmethod
    def of(pairs) -> "Entourage":
        return Entourage(pairs=frozenset(tuple(p) for p in pairs))

    def __iter__(self):
        return iter(sorted(self.pairs, key=lambda p: (element_key(p[0]), element_key(p[1]))))

    def __len__(self):
        return len(self.pairs)


def diagonal(elements) -> Entourage:
    return Entourage.of((x, x) for x in elements)


def compose(e1: Entourage, e2: Entourage) -> Entourage:
    """Relational composition: (x, z) with (x, y) in e1 and (y, z) in e2."""
    by_left = {}
    for y, z in e2.pairs:
        by_left.setdefault(y, []).append(z)
    out = set()
    for x, y in e1.pairs:
        for z in by_left.get(y, ()):
            out.add((x, z))
    return Entourage(frozenset(out))


def invert(e: Entourage) -> Entourage:
    return Entourage(frozenset((y, x) for x, y in e.pairs))


def left_shadow(spec: GroupSpec, e: Entourage) -> frozenset:
    """{x^-1 y} over the pairs of the entourage."""
    return frozenset(spec.mul(spec.inv(x), y) for x, y in e.pairs)


def right_shadow(spec: GroupSpec, e: Entourage) -> frozenset:
    """{x y^-1} over the pairs of the entourage."""
    return frozenset(spec.mul(x, spec.inv(y)) for x, y in e.pairs)


def theta_image(spec: GroupSpec, e: Entourage) -> Entourage:
    """Image of the entourage under elementwise inversion."""
    return Entourage(frozenset((spec.inv(x), spec.inv(y)) for x, y in e.pairs))


def translate(spec: GroupSpec, g, e: Entourage) -> Entourage:
    return Entourage(frozenset((spec.mul(g, x), spec.mul(g, y)) for x, y in e.pairs))


@dataclass(frozen=True)
class EntourageFamily:
    """A pure indexed sequence of entourages, probed at horizons."""

    index_cap: int
    generator: Callable[[int], Entourage]
    name: str = ""

    def at(self, n: int) -> Entourage:
        if not 1 <= n <= self.index_cap:
            raise IndexError(f"index {n} outside 1..{self.index_cap}")
        return self.generator(n)


# -- structures -------------------------------------------------------


class Structure:
    """A way of measuring how controlled an entourage is."""

    def value_of(self, e: Entourage):
        raise NotImplementedError


@dataclass
class BoundedByMetric(Structure):
    """Controlled = uniformly bounded distance; observed = max distance."""

    metric: MetricEvaluator

    def value_of(self, e: Entourage):
        best = 0
        for x, y in e.pairs:
            d = self.metric.eval(x, y)
            if is_horizon(d):
                return None
            if d > best:
                best = d
        return best


@dataclass
class LeftBornological(Structure):
    """Controlled = left shadow bounded; observed = cover depth of shadow."""

    basis: BornologyBasis
    depth_cap: int = 16

    def value_of(self, e: Entourage):
        shadow = left_shadow(self.basis.spec, e)
        return member_depth(self.basis, shadow, self.depth_cap)


@dataclass
class RightBornological(Structure):
    basis: BornologyBasis
    depth_cap: int = 16

    def value_of(self, e: Entourage):
        shadow = right_shadow(self.basis.spec, e)
        return member_depth(self.basis, shadow, self.depth_cap)


@dataclass
class ControlledVerdict:
    structure: str
    per_index: list  # (index, observed quantity or None on depth overflow)
    trend: str


def controlled_probe(
    family: EntourageFamily,
    structure: Structure,
    horizon: int,
    depth: int | None = None,
) -> ControlledVerdict:
    """Observe the family's per-index quantity up to the horizon.

    The quantity is the max distance (metric structures) or the minimal
    shadow cover depth (bornological structures, None on overflow); the
    trend is classified by the shared ladder rule.
    """
    if horizon > family.index_cap:
        raise ValueError("horizon exceeds the family's index cap")
    if depth is not None and isinstance(structure, (LeftBornological, RightBornological)):
        structure = type(structure)(basis=structure.basis, depth_cap=depth)
    per_index = []
    for n in range(1, horizon + 1):
        per_index.append((n, structure.value_of(family.at(n))))
    trend = classify_trend([v for _, v in per_index])
    return ControlledVerdict(
        structure=type(structure).__name__, per_index=per_index, trend=trend
    )


# -- finite-set boundedness ------------------------------------------


@dataclass
class BoundedSetReport:
    diam: object
    radii: dict
    two_sided_ok: bool
    horizon_hit: bool = False


def bounded_set_check(B, m: MetricEvaluator) -> BoundedSetReport:
    """Quantitative check that diameter and radii bound each other.

    For every x in B: diam(B) <= 2 * max_b d(b, x) and max_b d(b, x)
    <= diam(B).
    """
    B = sorted(set(B), key=element_key)
    if not B:
        raise ValueError("B must be nonempty")
    diam = m.diameter(B)
    if is_horizon(diam):
        return BoundedSetReport(diam=HORIZON, radii={}, two_sided_ok=False, horizon_hit=True)
    radii = {}
    for x in B:
        r = 0
        for b in B:
            d = m.eval(b, x)
            if is_horizon(d):
                return BoundedSetReport(
                    diam=HORIZON, radii={}, two_sided_ok=False, horizon_hit=True
                )
            r = max(r, d)
        radii[x] = r
    ok = all(diam <= 2 * r and r <= diam for r in radii.values())
    return BoundedSetReport(diam=diam, radii=radii, two_sided_ok=ok)


def left_translation_invariance_check(spec: GroupSpec, e: Entourage, shifts):
    """left_shadow(g * e) must equal left_shadow(e) for every shift g."""
    base = left_shadow(spec, e)
    for g in sorted(set(shifts), key=element_key):
        if left_shadow(spec, translate(spec, g, e)) != base:
            return False, g
    return True, None


# -- map probes -------------------------------------------------------


def _set_boundedness_ladder(structure: Structure, subset, steps: int = 3):
    """Observed boundedness values of a set over a prefix ladder.

    Uses the equivalence of B x B controlled with B x {x} controlled:
    each prefix is measured through the entourage prefix x {anchor}.
    The final ladder value is for the full set; a None there (cover-depth
    or horizon overflow) is the finite-scale sign of unboundedness.
    """
    subset = sorted(set(subset), key=element_key)
    anchor = subset[0]
    values = []
    for prefix in ladder_prefixes(subset, steps):
        values.append(structure.value_of(Entourage.of((x, anchor) for x in prefix)))
    return values


@dataclass
class CoarseMapReport:
    bornologous_ok: bool
    proper_ok: bool
    witnesses: list = field(default_factory=list)


def coarse_map_probe(
    f: Callable,
    domain: tuple[GroupSpec, Structure],
    codomain: tuple[GroupSpec, Structure],
    families,
    bounded_samples,
    domain_truncation,
    horizon: int,
    depth: int | None = None,
) -> CoarseMapReport:
    """Finite-sample probe that a map is bornologous and proper.

    Bornologous: every supplied family controlled in the domain structure
    must map, pairwise, to a family with bounded trend in the codomain.
    Proper: the preimage within the sampled domain truncation of every
    bounded sample must have bounded trend under the domain structure.
    """
    _, dom_structure = domain
    _, cod_structure = codomain
    witnesses = []

    bornologous_ok = True
    for fam in families:
        dom_verdict = controlled_probe(fam, dom_structure, horizon, depth)
        if dom_verdict.trend != "bounded":
            continue
        image = EntourageFamily(
            index_cap=fam.index_cap,
            generator=lambda n, fam=fam: Entourage.of(
                (f(x), f(y)) for x, y in fam.at(n).pairs
            ),
            name=f"{fam.name}-image",
        )
        cod_verdict = controlled_probe(image, cod_structure, horizon, depth)
        if cod_verdict.trend != "bounded":
            bornologous_ok = False
            witnesses.append(("bornologous", fam.name, cod_verdict))

    proper_ok = True
    domain_truncation = sorted(set(domain_truncation), key=element_key)
    for sample in bounded_samples:
        sample = frozenset(sample)
        preimage = [x for x in domain_truncation if f(x) in sample]
        if not preimage:
            continue
        values = _set_boundedness_ladder(dom_structure, preimage)
        if values[-1] is None:
            proper_ok = False
            witnesses.append(("proper", sorted(sample, key=element_key), values))

    return CoarseMapReport(
        bornologous_ok=bornologous_ok, proper_ok=proper_ok, witnesses=witnesses
    )


def closeness_probe(
    f: Callable,
    f2: Callable,
    domain_truncation,
    structure: Structure,
    steps: int = 3,
) -> ControlledVerdict:
    """Probe the pairing {(f(m), f2(m))} for controlledness on a ladder."""
    domain_truncation = sorted(set(domain_truncation), key=element_key)
    per_index = []
    for i, prefix in enumerate(ladder_prefixes(domain_truncation, steps), start=1):
        e = Entourage.of((f(m), f2(m)) for m in prefix)
        per_index.append((i, structure.value_of(e)))
    trend = classify_trend([v for _, v in per_index])
    return ControlledVerdict(
        structure=type(structure).__name__, per_index=per_index, trend=trend
    )
