"""Volume-preserving analysis of weighted blowups at the marked point.

Two routes are always run and must agree:

* the direct discrepancy a(E) = (1 + a + b - 1) - wt(D) for each weight
  assignment, and
* the stepwise toric description from :mod:`quarticvp.blowup`.

A weight triple counts as volume preserving when some assignment of
{1, a, b} to (x1, x2, x3) has discrepancy zero; the per-assignment results
stay visible because the normal form breaks the x2/x3 symmetry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .blowup import VpTrace, run_toric_description
from .errors import ConsistencyViolation
from .poly import dehomogenize, weighted_order
from .quartic import NormalizedQuartic
from .singclass import TypeTag

# weight pairs whose blowup can initiate a Sarkisov link from P^3
LINK_PAIRS = frozenset({(1, 1), (1, 2), (2, 3), (2, 5)})

DEFAULT_MAX_B = 12


@dataclass(frozen=True)
class AssignmentResult:
    assignment: tuple
    discrepancy: int
    stepwise_vp: bool
    trace: VpTrace

    def to_json(self) -> dict:
        return {
            "assignment": list(self.assignment),
            "discrepancy": self.discrepancy,
            "stepwise_vp": self.stepwise_vp,
        }


@dataclass
class WeightVerdict:
    a: int
    b: int
    results: list = field(default_factory=list)

    @property
    def weights(self) -> tuple:
        return (1, self.a, self.b)

    @property
    def vp(self) -> bool:
        return any(r.discrepancy == 0 for r in self.results)

    @property
    def initiates_link(self) -> bool:
        return self.vp and (self.a, self.b) in LINK_PAIRS

    def vp_assignments(self) -> list:
        return [r.assignment for r in self.results if r.discrepancy == 0]

    def to_json(self) -> dict:
        return {
            "weights": list(self.weights),
            "vp": self.vp,
            "initiates_link": self.initiates_link,
            "assignments": [r.to_json() for r in self.results],
        }


def direct_vp(q: NormalizedQuartic, weights) -> int:
    """The discrepancy (w1 + w2 + w3 - 1) - wt(D) of one assignment."""
    w1, w2, w3 = weights
    affine = dehomogenize(q.full_equation(), 0)
    return (w1 + w2 + w3 - 1) - weighted_order(affine, (w1, w2, w3))


def distinct_assignments(a: int, b: int) -> list:
    """All distinct ways to give the weights {1, a, b} to (x1, x2, x3)."""
    seen = []
    for perm in (
        (1, a, b),
        (1, b, a),
        (a, 1, b),
        (b, 1, a),
        (a, b, 1),
        (b, a, 1),
    ):
        if perm not in seen:
            seen.append(perm)
    return seen


def analyze_weight(q: NormalizedQuartic, a: int, b: int) -> WeightVerdict:
    """Evaluate one weight triple by both methods and insist they agree."""
    if math.gcd(a, b) != 1:
        raise ValueError(f"weights (1,{a},{b}) are not coprime")
    verdict = WeightVerdict(a=a, b=b)
    for assignment in distinct_assignments(a, b):
        disc = direct_vp(q, assignment)
        trace = run_toric_description(q, assignment)
        if (disc == 0) != trace.overall_vp:
            raise ConsistencyViolation(
                f"direct discrepancy {disc} but stepwise vp={trace.overall_vp} "
                f"for weights {assignment} on {q.to_json()}"
            )
        verdict.results.append(
            AssignmentResult(
                assignment=assignment,
                discrepancy=disc,
                stepwise_vp=trace.overall_vp,
                trace=trace,
            )
        )
    return verdict


def default_max_a(tag: TypeTag) -> int:
    """Bound on ``a`` from the resolution length of the classified type."""
    return max(1, tag.resolution_point_blowups())


def enumerate_vp(
    q: NormalizedQuartic,
    max_a: int | None = None,
    max_b: int = DEFAULT_MAX_B,
    tag: TypeTag | None = None,
) -> list:
    """Verdicts for every coprime (a, b) with a <= max_a, b <= max_b."""
    if max_a is None:
        if tag is None:
            from .singclass import classify

            tag, _ = classify(q)
        max_a = default_max_a(tag)
    verdicts = []
    for a in range(1, max_a + 1):
        for b in range(a, max_b + 1):
            if math.gcd(a, b) != 1:
                continue
            verdicts.append(analyze_weight(q, a, b))
    return verdicts


def sarkisov_filter(verdicts) -> list:
    """Keep the volume-preserving triples that can initiate a link."""
    return [v for v in verdicts if v.initiates_link]


def vp_set(verdicts) -> set:
    return {v.weights for v in verdicts if v.vp}
