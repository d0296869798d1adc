"""Norms, metrics, and pseudometrics on groups, with truncated probes.

Distances are exact (ints or Fractions).  Word-metric evaluation is
truncated at a radius cap: past the cap the evaluator returns the HORIZON
marker instead of a number.  Truncation is the normal operating mode of
the toolkit, never an exception.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .groups import (
    BudgetExceededError,
    GroupSpec,
    ball_size_cap,
    element_key,
    shell_key,
)


class _Horizon:
    """Marker returned when a truncated evaluation passes its radius cap."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "HORIZON"


HORIZON = _Horizon()


def is_horizon(value) -> bool:
    return value is HORIZON


def classify_trend(values: list) -> str:
    """Conservative trend rule over a ladder of observed values.

    "growing" when the values strictly increase at every step and the last
    increment is at least the first; "bounded" when the last two values are
    equal; "inconclusive" otherwise.  Overflow markers (None) count as
    larger than any number.
    """
    if len(values) < 2:
        return "inconclusive"
    numeric = [v for v in values if v is not None]
    if any(v is None for v in values):
        if all(v is None for v in values[-2:]):
            return "inconclusive"
        if numeric == sorted(set(numeric)):
            return "growing"
        return "inconclusive"
    if values[-1] == values[-2]:
        return "bounded"
    increments = [b - a for a, b in zip(values, values[1:])]
    if all(d > 0 for d in increments) and increments[-1] >= increments[0]:
        return "growing"
    return "inconclusive"


def ladder_prefixes(items: list, steps: int = 3) -> list[list]:
    """Nested prefixes of a truncation, ordered small-magnitude-first.

    Successive prefixes behave like growing balls around the identity.
    """
    ordered = sorted(items, key=lambda g: (shell_key(g), element_key(g)))
    n = len(ordered)
    if n == 0:
        return [[] for _ in range(steps)]
    cuts = sorted({max(1, (n * (i + 1)) // steps) for i in range(steps)})
    return [ordered[:c] for c in cuts]


# -- norms ------------------------------------------------------------


class WordNorm:
    """Minimal word length in the generating set, truncated at radius_cap."""

    def __init__(self, spec: GroupSpec, radius_cap: int = 64):
        self.spec = spec
        self.radius_cap = radius_cap
        self._norms = {spec.identity(): 0}
        self._frontier = [spec.identity()]
        self._level = 0

    def _extend(self) -> bool:
        gens = self.spec.symmetric_generators()
        cap = ball_size_cap()
        nxt = []
        for g in self._frontier:
            for s in gens:
                h = self.spec.mul(g, s)
                if h not in self._norms:
                    self._norms[h] = self._level + 1
                    nxt.append(h)
                    if len(self._norms) > cap:
                        raise BudgetExceededError("word-norm table exceeded cap")
        self._frontier = nxt
        self._level += 1
        return bool(nxt)

    def __call__(self, g):
        while g not in self._norms:
            if self._level >= self.radius_cap or not self._extend():
                return HORIZON
        return self._norms[g]


class MaxEntryNorm:
    """Largest absolute matrix entry of a Heisenberg element."""

    def __init__(self, spec: GroupSpec):
        self.spec = spec

    def __call__(self, g):
        return max(abs(c) for c in g)


# -- metric evaluators ------------------------------------------------


class MetricEvaluator:
    """Two-argument exact distance; subclasses set `pseudo` as needed."""

    pseudo = False
    spec: GroupSpec

    def eval(self, g, h):
        raise NotImplementedError

    def diameter(self, elements):
        """Max pairwise distance over a finite set; HORIZON-propagating."""
        elements = list(elements)
        best = 0
        for i, g in enumerate(elements):
            for h in elements[i + 1 :]:
                d = self.eval(g, h)
                if is_horizon(d):
                    return HORIZON
                if d > best:
                    best = d
        return best


class InducedMetric(MetricEvaluator):
    """Left-invariant metric induced by a norm: d(g, h) = norm(g^-1 h)."""

    def __init__(self, norm):
        self.norm = norm
        self.spec = norm.spec

    def eval(self, g, h):
        return self.norm(self.spec.mul(self.spec.inv(g), h))


class WordMetric(InducedMetric):
    """Cayley-graph distance for a fixed generating set."""

    def __init__(self, spec: GroupSpec, radius_cap: int = 64):
        super().__init__(WordNorm(spec, radius_cap=radius_cap))
        self.radius_cap = radius_cap


class MaxEntryMetric(MetricEvaluator):
    """Entrywise max distance on Heisenberg matrices (not left-invariant)."""

    def __init__(self, spec: GroupSpec):
        self.spec = spec

    def eval(self, g, h):
        return max(abs(x - y) for x, y in zip(g, h))


class Entry12Pseudometric(MetricEvaluator):
    """|a - a'| on Heisenberg triples (a, b, c): the (1,2) matrix entry."""

    pseudo = True

    def __init__(self, spec: GroupSpec):
        self.spec = spec

    def eval(self, g, h):
        return abs(g[0] - h[0])


class QuotientWordMetric(MetricEvaluator):
    """Pullback of the quotient word metric along Z^n -> Z^n / lattice.

    A pseudometric on the ambient free abelian group: elements of the same
    coset are at distance zero.
    """

    pseudo = True

    def __init__(self, rank: int, lattice_generators, radius_cap: int = 64):
        self.spec = GroupSpec.free_abelian(rank)
        self.quotient = GroupSpec.quotient_by_lattice(rank, lattice_generators)
        self._word = WordMetric(self.quotient, radius_cap=radius_cap)

    def project(self, g):
        return self.quotient._reduce(g)

    def eval(self, g, h):
        return self._word.eval(self.project(g), self.project(h))


class ScaledMetric(MetricEvaluator):
    """A base metric multiplied by a positive rational factor."""

    def __init__(self, base: MetricEvaluator, factor):
        factor = Fraction(factor)
        if factor <= 0:
            raise ValueError("factor must be positive")
        self.base = base
        self.factor = factor
        self.spec = base.spec
        self.pseudo = base.pseudo

    def eval(self, g, h):
        d = self.base.eval(g, h)
        if is_horizon(d):
            return HORIZON
        return self.factor * d


# -- derived operations ----------------------------------------------


def word_distance(metric: WordMetric, g, h):
    return metric.eval(g, h)


def induced_distance(norm, g, h):
    return InducedMetric(norm).eval(g, h)


def max_entry_distance(g, h):
    return max(abs(x - y) for x, y in zip(g, h))


def quotient_distance(metric: QuotientWordMetric, a, b):
    return metric.eval(a, b)


def rho_plus_truncated(base: MetricEvaluator, x, y, truncation):
    """Max over g in the truncation of d(gx, gy).

    Monotone under truncation enlargement; equals the base distance for
    every left-invariant base.  The truncation must contain the identity.
    """
    truncation = list(truncation)
    if not truncation:
        raise ValueError("truncation must be nonempty")
    spec = base.spec
    if spec.identity() not in truncation:
        raise ValueError("truncation must contain the identity")
    best = 0
    for g in truncation:
        d = base.eval(spec.mul(g, x), spec.mul(g, y))
        if is_horizon(d):
            return HORIZON
        if d > best:
            best = d
    return best


@dataclass
class BornologicityReport:
    """Truncated evidence for the uniform left-translation bound S_C."""

    bound_c: Fraction
    certified_bound: object  # number, or None when the trend marker is set
    trend: str
    ladder_values: list = field(default_factory=list)
    witness_pairs: list = field(default_factory=list)
    truncation_used: int = 0
    empty_pair_set: bool = False


def bornologicity_probe(
    base: MetricEvaluator,
    C,
    pair_truncation,
    shift_truncation,
    ladder_steps: int = 3,
) -> BornologicityReport:
    """Probe whether distances under C stay uniformly bounded under shifts.

    Evaluates S_C over a ladder of at least three increasing truncations
    and classifies the trend as bounded/growing/inconclusive.
    """
    C = Fraction(C)
    if C <= 0:
        raise ValueError("C must be positive")
    pair_truncation = list(pair_truncation)
    shift_truncation = list(shift_truncation)
    if not pair_truncation or not shift_truncation:
        raise ValueError("truncations must be nonempty")
    spec = base.spec
    ladder_steps = max(ladder_steps, 3)
    pair_ladder = ladder_prefixes(pair_truncation, ladder_steps)
    shift_ladder = ladder_prefixes(shift_truncation, ladder_steps)

    values = []
    witnesses = []
    any_pairs = False
    for pairs_t, shifts_t in zip(pair_ladder, shift_ladder):
        close_pairs = []
        for x in pairs_t:
            for y in pairs_t:
                if x == y:
                    continue
                d = base.eval(x, y)
                if not is_horizon(d) and d < C:
                    close_pairs.append((x, y))
        if not close_pairs:
            values.append(0)
            continue
        any_pairs = True
        step_best = 0
        step_witnesses = []
        for g in shifts_t:
            for x, y in close_pairs:
                d = base.eval(spec.mul(g, x), spec.mul(g, y))
                if is_horizon(d):
                    continue
                if d > step_best:
                    step_best = d
                    step_witnesses = [(g, x, y, d)]
        values.append(step_best)
        witnesses = step_witnesses
    if not any_pairs:
        return BornologicityReport(
            bound_c=C,
            certified_bound=None,
            trend="bounded",
            ladder_values=values,
            truncation_used=len(pair_truncation),
            empty_pair_set=True,
        )
    trend = classify_trend(values)
    certified = values[-1] if trend == "bounded" else None
    return BornologicityReport(
        bound_c=C,
        certified_bound=certified,
        trend=trend,
        ladder_values=values,
        witness_pairs=witnesses,
        truncation_used=len(pair_truncation),
    )


@dataclass
class PropernessReport:
    count: int
    saturated: bool
    ladder_counts: list = field(default_factory=list)


def properness_probe(
    base: MetricEvaluator, R, truncation, ladder_steps: int = 3
) -> PropernessReport:
    """Count truncation elements within distance R of the identity.

    `saturated` is finite-scale evidence of properness at R: the count did
    not change over the last ladder step.
    """
    R = Fraction(R)
    truncation = list(truncation)
    if not truncation:
        raise ValueError("truncation must be nonempty")
    e = base.spec.identity()
    counts = []
    for prefix in ladder_prefixes(truncation, max(ladder_steps, 2)):
        n = 0
        for g in prefix:
            d = base.eval(e, g)
            if not is_horizon(d) and d <= R:
                n += 1
        counts.append(n)
    saturated = len(counts) >= 2 and counts[-1] == counts[-2]
    return PropernessReport(count=counts[-1], saturated=saturated, ladder_counts=counts)
