"""Stepwise toric description of the (1,a,b)-weighted blowup.

The weighted blowup factors as a chain of ordinary blowups: ``a`` point
blowups inserting the rays (1,1,1), ..., (1,a,a), then ``b-a`` blowups of
the coordinate line {x1 = x3 = 0} inserting (1,a,a+1), ..., (1,a,b).  The
whole chain is volume preserving exactly when every step is, and a step is
volume preserving exactly when its center sits on the strict transform
with the crepant multiplicity: order 2 at a point, order 1 along the line.

Everything is tracked in the first affine chart, where every center of the
chain is visible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ReducibleInput
from .poly import (
    Polynomial,
    dehomogenize,
    divide_var_power,
    order_along,
    permute_variables,
    substitute,
    var_power_content,
)
from .quartic import NormalizedQuartic

POINT = "point"
CURVE = "curve"

_X1 = Polynomial.variable(1)
_X2 = Polynomial.variable(2)
_X3 = Polynomial.variable(3)


@dataclass(frozen=True)
class RayStep:
    ray: tuple
    kind: str
    index: int


@dataclass(frozen=True)
class StepRecord:
    ray: tuple
    kind: str
    order: int
    discrepancy: int
    vp: bool
    non_canonical: bool = False

    def to_json(self) -> dict:
        return {
            "ray": list(self.ray),
            "kind": self.kind,
            "order": self.order,
            "discrepancy": self.discrepancy,
            "vp": self.vp,
        }


@dataclass
class VpTrace:
    weights: tuple
    assignment: tuple
    steps: list = field(default_factory=list)
    strict_transforms: list = field(default_factory=list)

    @property
    def overall_vp(self) -> bool:
        return all(s.vp for s in self.steps)

    def to_json(self) -> dict:
        return {
            "weights": list(self.weights),
            "assignment": list(self.assignment),
            "steps": [s.to_json() for s in self.steps],
            "overall_vp": self.overall_vp,
        }


def ray_sequence(a: int, b: int) -> list:
    """The rays inserted for weights (1, a, b), in insertion order."""
    if a < 1 or b < a:
        raise ValueError("weights must satisfy 1 <= a <= b")
    if math.gcd(a, b) != 1:
        raise ValueError(f"weights (1,{a},{b}) are not coprime")
    steps = [RayStep((1, i, i), POINT, i) for i in range(1, a + 1)]
    steps += [RayStep((1, a, i), CURVE, i) for i in range(a + 1, b + 1)]
    return steps


def step_transform(f: Polynomial, kind: str) -> Polynomial:
    """Strict transform in the first chart: substitute, strip x1-content."""
    if f.is_zero():
        raise ValueError("cannot transform the zero polynomial")
    if kind == POINT:
        total = substitute(f, {2: _X1 * _X2, 3: _X1 * _X3})
    elif kind == CURVE:
        total = substitute(f, {3: _X1 * _X3})
    else:
        raise ValueError(f"unknown step kind {kind!r}")
    content = var_power_content(total, 1)
    strict = divide_var_power(total, 1, content)
    if strict.is_constant():
        raise ReducibleInput(
            "the exceptional divisor absorbed the whole strict transform"
        )
    return strict


def step_vp(f: Polynomial, kind: str) -> StepRecord:
    """Volume-preserving verdict of one step against the current equation.

    Point steps need the origin to be a double point (order 2); curve
    steps need the line {x1 = x3 = 0} to lie on the surface with
    multiplicity exactly 1.  Higher orders leave the canonical regime and
    are flagged, never silently accepted.
    """
    if f.is_zero():
        raise ValueError("cannot test the zero polynomial")
    if kind == POINT:
        order = f.min_degree()
        expected = 2
    elif kind == CURVE:
        order = order_along(f, (1, 3))
        expected = 1
    else:
        raise ValueError(f"unknown step kind {kind!r}")
    return StepRecord(
        ray=(),
        kind=kind,
        order=order,
        discrepancy=expected - order,
        vp=order == expected,
        non_canonical=order > expected,
    )


def weight_one_relabeling(assignment):
    """Permutation mapping the weight-1 slot to x1 and sorting (a, b).

    ``assignment`` gives the weight carried by (x1, x2, x3).  Returns the
    variable permutation (as used by permute_variables) and the canonical
    (1, a, b).  Ties keep the original variable order, so the relabeling
    is deterministic.
    """
    order = sorted(range(3), key=lambda i: (assignment[i], i))
    canonical = tuple(assignment[i] for i in order)
    if canonical[0] != 1:
        raise ValueError("one weight must equal 1")
    perm = [0, 0, 0, 0]
    for slot, source in enumerate(order):
        perm[source + 1] = slot + 1
    return tuple(perm), canonical


def run_toric_description(q: NormalizedQuartic, assignment) -> VpTrace:
    """Replay the ray insertions for one weight assignment.

    A curve step whose center line has order >= 2 means the exceptional
    divisor divides the expected strict transform, which forces the
    quartic to be reducible or non-normal, so it is an input error rather
    than a verdict.
    """
    perm, (_, a, b) = weight_one_relabeling(assignment)
    f = permute_variables(dehomogenize(q.full_equation(), 0), perm)
    trace = VpTrace(weights=(1, a, b), assignment=tuple(assignment))
    trace.strict_transforms.append(f)
    for step in ray_sequence(a, b):
        record = step_vp(f, step.kind)
        record = StepRecord(
            ray=step.ray,
            kind=record.kind,
            order=record.order,
            discrepancy=record.discrepancy,
            vp=record.vp,
            non_canonical=record.non_canonical,
        )
        if record.kind == CURVE and record.non_canonical:
            raise ReducibleInput(
                "the center line is multiple on the strict transform; "
                "the quartic is reducible or non-normal"
            )
        trace.steps.append(record)
        f = step_transform(f, step.kind)
        trace.strict_transforms.append(f)
    return trace
