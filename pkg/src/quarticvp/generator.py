"""Seeded construction of witness quartics for every supported stratum.

Strategy: draw all named coefficients as small random rationals, then
repair them constraint by constraint.

* A-family strata impose the criteria-chain equalities in resolution order;
  each one is affine in some still-free coefficient, so a two-point probe
  solves it exactly.
* D/E strata fix the root structure of p1 directly (double or triple root
  at a chosen point) and then walk the refinement ladder, repairing the
  first unmet defect (rank drop of a tangent cone, or prescribed root
  multiplicities one level down) the same way; a three-point quadratic
  probe backs up the affine one where a coefficient enters twice.

Every candidate is validated by running the real classifier; terminating
inequalities and genericity are enforced by rejection within a retry cap.
Strata whose defining conditions force a non-normal surface exhaust the
cap and raise GenerationError instead of returning a fake witness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import GenerationError, QuarticVPError
from .field import GaussianRational, ONE, ZERO, sqrt_if_exists
from .poly import Polynomial, substitute
from .quartic import (
    COEFF_NAMES,
    CoefficientTable,
    NormalizedQuartic,
    X2X3,
    X3SQ,
    coefficients,
    quartic_from_table,
)
from .singclass import (
    TypeTag,
    _normalize_rank1,
    _normalize_rank2,
    a_chain_quantities,
    classify,
    line_slice,
    mirror_chart,
    point_chart,
)

MAX_RETRIES = 64
_X1 = Polynomial.variable(1)
_X2 = Polynomial.variable(2)
_X3 = Polynomial.variable(3)

# cumulative equality conditions (Tables 5 and 6) along each ray sequence
WEIGHT_CONDITIONS = {
    (1, 1, 3): ("b0", "beta2", "rho2", "sigma0"),
    (1, 2, 3): ("b0", "beta2", "c0"),
    (1, 2, 5): ("b0", "beta2", "c0", "rho2", "delta2", "sigma0", "eps2"),
    (1, 3, 4): ("b0", "c0", "beta2", "beta3", "delta2"),
    (1, 3, 5): ("b0", "c0", "beta2", "beta3", "delta2", "rho2"),
    (1, 4, 5): ("b0", "c0", "beta2", "beta3", "delta2", "delta3"),
}

# colored (non-generic) weights of each classification row, per the result
# tables; generic witnesses must avoid each of these condition sets
COLORED_WEIGHTS = {
    ("A", 1): (),
    ("A", 2): (),
    ("A", 3): ((1, 1, 3),),
    ("A", 4): ((1, 1, 3), (1, 2, 3)),
    ("A", 5): ((1, 1, 3), (1, 2, 3)),
    ("A", 6): ((1, 1, 3), (1, 2, 3), (1, 2, 5), (1, 3, 4)),
    ("A", 7): ((1, 1, 3), (1, 2, 3), (1, 2, 5), (1, 3, 4), (1, 3, 5)),
    ("A", 8): ((1, 1, 3), (1, 2, 3), (1, 2, 5), (1, 3, 4), (1, 3, 5)),
    ("D", 4): (),
    ("D", 5): ((1, 2, 3),),
    ("D", 6): ((1, 2, 3),),
    ("D", 7): ((1, 2, 3), (1, 3, 4), (1, 3, 5)),
    ("D", 8): ((1, 2, 3), (1, 3, 4), (1, 3, 5)),
    ("D", 9): ((1, 2, 3), (1, 3, 4), (1, 3, 5), (1, 4, 5)),
    ("D", 10): ((1, 2, 3), (1, 3, 4), (1, 3, 5), (1, 4, 5)),
    ("E", 6): ((1, 2, 3), (1, 3, 4), (1, 3, 5)),
    ("E", 7): ((1, 2, 3), (1, 3, 4), (1, 3, 5)),
    ("E", 8): ((1, 2, 3), (1, 3, 4), (1, 3, 5), (1, 4, 5)),
}

GENERATOR_TARGETS = tuple(
    TypeTag(f, i, exact=not (f == "A" and i == 8)) for f, i in COLORED_WEIGHTS
)

# refinement ladder of each D/E stratum below the top germ:
#   mid   -- D>4 layer, double root prescribed at t = 0
#   midI  -- D>4 layer, double root at infinity (mirror chart descent)
#   midE  -- E layer, triple root at infinity
#   D4 / A3 / A5 -- terminal germ requirements
_DE_CHAINS = {
    ("D", 5): ("A3",),
    ("D", 6): ("D4",),
    ("D", 7): ("mid", "A3"),
    ("D", 8): ("mid", "D4"),
    ("D", 9): ("mid", "mid", "A3"),
    ("D", 10): ("mid", "mid", "D4"),
    ("E", 6): ("A5",),
    ("E", 7): ("mid", "D4"),
    ("E", 8): ("midE", "mid", "D4"),
}


@dataclass(frozen=True)
class GenSpec:
    target: TypeTag
    mode: tuple | str  # "generic" or a weight triple (1, a, b)
    seed: int

    def __post_init__(self):
        if self.mode != "generic":
            allowed = COLORED_WEIGHTS.get((self.target.family, self.target.index), ())
            if tuple(self.mode) not in allowed:
                raise ValueError(
                    f"weights {self.mode} are not a special stratum of "
                    f"{self.target.label()}"
                )

    def label(self) -> str:
        mode = "generic" if self.mode == "generic" else "x".join(map(str, self.mode))
        return f"{self.target.label()}:{mode}:{self.seed}"


def _draw(rng: random.Random) -> GaussianRational:
    return GaussianRational(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))


def _draw_nonzero(rng: random.Random) -> GaussianRational:
    while True:
        v = _draw(rng)
        if not v.is_zero():
            return v


class _Builder:
    """Mutable coefficient vector with frozen slots and probe solving."""

    def __init__(self, rng: random.Random, a_part: Polynomial, frozen=()):
        self.rng = rng
        self.a_part = a_part
        self.values = {name: _draw(rng) for name in COEFF_NAMES}
        self.frozen = set()
        for name in frozen:
            self.values[name] = ZERO
            self.frozen.add(name)

    def set(self, name, value, freeze=True):
        value = GaussianRational.of(value)
        if name in self.frozen and self.values[name] != value:
            raise GenerationError(f"conflicting constraint on frozen {name}")
        self.values[name] = value
        if freeze:
            self.frozen.add(name)

    def quartic(self) -> NormalizedQuartic:
        return quartic_from_table(self.a_part, CoefficientTable(**self.values))

    def solve(self, objective, candidates) -> bool:
        """Zero ``objective(quartic)`` by adjusting one free coefficient.

        ``objective`` returns None when satisfied, else the defect value.
        """

        def value_at(name, v):
            old = self.values[name]
            self.values[name] = v
            try:
                return objective(self.quartic())
            finally:
                self.values[name] = old

        for name in candidates:
            if name in self.frozen:
                continue
            base = self.values[name]
            try:
                y0 = value_at(name, base)
                if y0 is None:
                    return True
                y1 = value_at(name, base + ONE)
            except (QuarticVPError, ValueError):
                continue
            if y1 is None:
                self.set(name, base + ONE, freeze=False)
                return True
            slope = y1 - y0
            if slope:
                root = base - y0 / slope
                try:
                    if value_at(name, root) is None:
                        self.set(name, root, freeze=False)
                        return True
                except (QuarticVPError, ValueError):
                    pass
            try:
                y2 = value_at(name, base + 2)
            except (QuarticVPError, ValueError):
                continue
            if y2 is None:
                self.set(name, base + 2, freeze=False)
                return True
            # quadratic fit through t = 0, 1, 2 in the offset from base
            p = (y2 - y1 * 2 + y0) / 2
            q = y1 - y0 - p
            if p.is_zero():
                continue
            disc = sqrt_if_exists(q * q - p * y0 * 4)
            if disc is None:
                continue
            for offset in ((-q + disc) / (p * 2), (-q - disc) / (p * 2)):
                try:
                    if value_at(name, base + offset) is None:
                        self.set(name, base + offset, freeze=False)
                        return True
                except (QuarticVPError, ValueError):
                    continue
        return False


def satisfies_conditions(table: CoefficientTable, names) -> bool:
    return all(getattr(table, n).is_zero() for n in names)


def _avoids_colored(q: NormalizedQuartic, target: TypeTag) -> bool:
    colored = COLORED_WEIGHTS[(target.family, target.index)]
    if not colored:
        return True
    table = coefficients(q)
    for weights in colored:
        if satisfies_conditions(table, WEIGHT_CONDITIONS[weights]):
            return False
    return True


# -- A-family construction -----------------------------------------------------


def _eq_objective(extract):
    def objective(q):
        value = extract(coefficients(q))
        return None if value.is_zero() else value

    return objective


def _gap4(t):
    d = a_chain_quantities(t)
    return d["xi2"] * d["xi3"] - d["alpha"]


def _gap6(t):
    d = a_chain_quantities(t)
    return d["gamma2"] * d["gamma3"] - d["mu"]


_A_CHAIN_STEPS = (
    (3, _eq_objective(lambda t: t.b0), ("b0",)),
    (4, _eq_objective(lambda t: t.c0 - t.beta2 * t.beta3), ("c0", "beta3", "beta2")),
    (
        5,
        _eq_objective(lambda t: a_chain_quantities(t)["zeta"]),
        ("delta3", "delta2", "rho3", "rho2", "rho23"),
    ),
    (
        6,
        _eq_objective(_gap4),
        ("eps23", "eps2", "eps3", "sigma0", "sigma3", "delta2", "delta3"),
    ),
    (
        7,
        _eq_objective(lambda t: a_chain_quantities(t)["theta"]),
        ("tau0", "tau3", "tau1", "tau2", "rho2", "rho3", "rho23"),
    ),
    (
        8,
        _eq_objective(_gap6),
        ("lam0", "lam4", "lam1", "lam3", "lam2", "eps2", "eps3"),
    ),
)

_A_TERMINATORS = {
    2: lambda t: bool(t.b0),
    3: lambda t: bool(t.c0 - t.beta2 * t.beta3),
    4: lambda t: bool(a_chain_quantities(t)["zeta"]),
    5: lambda t: bool(_gap4(t)),
    6: lambda t: bool(a_chain_quantities(t)["theta"]),
    7: lambda t: bool(_gap6(t)),
}


def _build_a(target: TypeTag, frozen, rng: random.Random):
    builder = _Builder(rng, X2X3, frozen)
    for threshold, objective, candidates in _A_CHAIN_STEPS:
        if target.index < threshold:
            break
        if objective(builder.quartic()) is None:
            continue
        if not builder.solve(objective, candidates):
            return None
    if target.exact:
        if not _A_TERMINATORS[target.index](coefficients(builder.quartic())):
            return None
    return builder.quartic()


def _build_a1(rng: random.Random):
    from .quartic import quadratic_rank

    while True:
        a_part = Polynomial.zero()
        for i in range(1, 4):
            for j in range(i, 4):
                mono = [0, 0, 0, 0]
                mono[i] += 1
                mono[j] += 1
                a_part = a_part + Polynomial.monomial(tuple(mono), _draw(rng))
        if not a_part.is_zero() and quadratic_rank(a_part) == 3:
            return _Builder(rng, a_part).quartic()


# -- D/E construction -----------------------------------------------------------


def _quad_slots(germ):
    quad = germ.homogeneous_component(2)
    return (
        quad.coefficient((0, 1, 1, 0)),
        quad.coefficient((0, 1, 0, 1)),
        quad.coefficient((0, 2, 0, 0)),
    )


def _a_terminal_defect(germ, req, stage):
    """Defects of a terminal A3 or A5 germ inside the walk."""
    g = _normalize_rank2(germ)
    h = point_chart(g)
    grad = h.coefficient((0, 1, 0, 0))
    if not grad.is_zero():
        return ("a-grad1", stage), grad
    quad = h.homogeneous_component(2)
    a = quad.coefficient((0, 1, 1, 0))
    b = quad.coefficient((0, 1, 0, 1))
    det_gap = a * b - quad.coefficient((0, 2, 0, 0))
    if req == "A3":
        if det_gap.is_zero():
            raise GenerationError("overshot the A3 terminal")
        return None
    if not det_gap.is_zero():
        return ("a-det", stage), det_gap
    g2 = substitute(h, {2: _X2 - _X1.scale(b), 3: _X3 - _X1.scale(a)})
    h2 = point_chart(g2)
    grad2 = h2.coefficient((0, 1, 0, 0))
    if not grad2.is_zero():
        return ("a-grad2", stage), grad2
    quad2 = h2.homogeneous_component(2)
    det2 = (
        quad2.coefficient((0, 1, 1, 0)) * quad2.coefficient((0, 1, 0, 1))
        - quad2.coefficient((0, 2, 0, 0))
    )
    if det2.is_zero():
        raise GenerationError("overshot the A5 terminal")
    return None


# ordinal of each defect kind within one stage, so probes can tell "the
# targeted defect is gone, a later one surfaced" from "an earlier one broke"
_DEFECT_RANK = {
    "pre-a": 0,
    "pre-c": 1,
    "rank1": 1,
    "flat": 2,
    "root": 3,
    "double": 4,
    "a-grad1": 5,
    "a-det": 6,
    "a-grad2": 7,
}


def _defect_key(tag) -> tuple:
    kind, stage, *extra = tag
    return (stage, _DEFECT_RANK[kind], extra[0] if extra else 0)


def _walk_objective(chain, t0: GaussianRational):
    """First unmet defect along the refinement ladder, or None when met."""

    def objective(q: NormalizedQuartic):
        h1 = point_chart(q.affine_equation())
        if t0.is_zero():
            germ = h1
        else:
            germ = substitute(h1, {2: _X2 + Polynomial.constant(t0)})
        for stage, req in enumerate(chain):
            a, b, c = _quad_slots(germ)
            if req in ("A3", "A5"):
                if not a.is_zero():
                    return ("pre-a", stage), a
                if not c.is_zero():
                    return ("pre-c", stage), c
                if b.is_zero():
                    raise GenerationError("rank collapsed at an A terminal")
                return _a_terminal_defect(germ, req, stage)
            if not a.is_zero():
                return ("pre-a", stage), a
            gap = b * b - c * 4
            if not gap.is_zero():
                return ("rank1", stage), gap
            germ = _normalize_rank1(germ)
            h = point_chart(germ)
            p = line_slice(h)
            if not p:
                raise GenerationError("exceptional line went fully singular")
            if req == "D4":
                return None
            if req in ("midE", "midI"):
                floor = 1 if req == "midE" else 2
                for k in range(floor, len(p)):
                    if not p[k].is_zero():
                        return ("flat", stage, k), p[k]
                if req == "midI" and (len(p) < 2 or p[1].is_zero()):
                    raise GenerationError("no simple branch left at infinity")
                if req == "midE" and p[0].is_zero():
                    raise GenerationError("slice vanished while flattening")
                germ = mirror_chart(germ)
                continue
            # req == "mid": double root at t = 0
            if not p[0].is_zero():
                return ("root", stage), p[0]
            if len(p) > 1 and not p[1].is_zero():
                return ("double", stage), p[1]
            if len(p) <= 2 or p[2].is_zero():
                raise GenerationError("prescribed double root degenerated")
            germ = h
        return None

    return objective


_DE_CANDIDATES = (
    "c0",
    "lam0",
    "tau0",
    "eps2",
    "delta2",
    "lam1",
    "tau1",
    "eps23",
    "delta3",
    "lam2",
    "tau2",
    "eps3",
    "lam3",
    "tau3",
    "lam4",
    "beta3",
    "sigma1",
    "rho23",
    "sigma2",
    "rho3",
    "sigma3",
)


def _build_de(target: TypeTag, frozen, rng: random.Random):
    builder = _Builder(rng, X3SQ, frozen)
    family, index = target.family, target.index

    def free(name):
        return name not in builder.frozen

    if (family, index) == ("D", 4):
        if free("sigma0"):
            builder.set("sigma0", _draw_nonzero(rng))
        return builder.quartic()

    chain = _DE_CHAINS[(family, index)]
    deep = any(req.startswith("mid") for req in chain)
    constrained = not all(free(n) for n in ("b0", "beta2"))
    if constrained or deep:
        # pin the multiple root of p1 at t = 0; deep strata additionally
        # keep the descent slots sparse, which makes the defect system
        # triangular in the remaining coefficients
        t0 = ZERO
        for name in ("b0", "beta2"):
            if free(name):
                builder.set(name, ZERO)
        if family == "E" and free("rho2"):
            builder.set("rho2", ZERO)
        if family == "D" and free("rho2"):
            builder.set("rho2", _draw_nonzero(rng))
        if free("sigma0"):
            builder.set("sigma0", _draw_nonzero(rng))
        if deep and free("beta3"):
            # nonzero beta3 keeps c0 = beta3^2/4 nonzero, so the witness
            # stays off every colored stratum
            builder.set("beta3", _draw_nonzero(rng), freeze=False)
    elif family == "D":
        t0 = _draw_nonzero(rng)
        t1 = _draw_nonzero(rng)
        if t1 == t0:
            t1 = t0 + ONE
        sigma0 = _draw_nonzero(rng)
        builder.set("sigma0", sigma0)
        builder.set("rho2", -sigma0 * (t0 * 2 + t1))
        builder.set("beta2", sigma0 * (t0 * t0 + t0 * t1 * 2))
        builder.set("b0", -sigma0 * t0 * t0 * t1)
    else:
        t0 = _draw_nonzero(rng)
        sigma0 = _draw_nonzero(rng)
        builder.set("sigma0", sigma0)
        builder.set("rho2", -sigma0 * 3 * t0)
        builder.set("beta2", sigma0 * 3 * t0 * t0)
        builder.set("b0", -sigma0 * t0**3)

    if (family, index) == ("E", 7) and constrained:
        # the specialized stratum hosts its D6 point at infinity
        chain = ("midI", "D4")
    objective = _walk_objective(chain, t0)

    for _ in range(24):
        try:
            defect = objective(builder.quartic())
        except (GenerationError, QuarticVPError, ValueError):
            break
        if defect is None:
            break
        want = _defect_key(defect[0])

        def scalar_objective(q, want=want):
            got = objective(q)
            if got is None:
                return None
            key = _defect_key(got[0])
            if key > want:
                # the targeted defect is satisfied; a later one remains
                return None
            if key < want:
                raise GenerationError("an earlier constraint broke")
            return got[1]

        if not builder.solve(scalar_objective, _DE_CANDIDATES):
            break
    # a stalled walk may still have drifted into the right stratum (for
    # example with the distinguished point at infinity); the caller
    # verifies with the real classifier either way
    return builder.quartic()


# -- public API ----------------------------------------------------------------


def generate(spec: GenSpec) -> NormalizedQuartic:
    """A witness quartic with the requested singularity, seeded and exact.

    Raises GenerationError when the stratum resists the retry budget; in
    particular strata whose defining conditions force a non-normal surface
    fail here rather than returning a fake witness.
    """
    frozen = ()
    if spec.mode != "generic":
        frozen = WEIGHT_CONDITIONS[tuple(spec.mode)]

    for attempt in range(MAX_RETRIES):
        rng = random.Random(f"{spec.label()}#{attempt}")
        try:
            if spec.target.family == "A":
                if spec.target.index == 1:
                    q = _build_a1(rng)
                else:
                    q = _build_a(spec.target, frozen, rng)
            else:
                q = _build_de(spec.target, frozen, rng)
            if q is None:
                continue
            tag, _ = classify(q)
            if (tag.family, tag.index, tag.exact) != (
                spec.target.family,
                spec.target.index,
                spec.target.exact,
            ):
                continue
            if spec.mode == "generic":
                if not _avoids_colored(q, spec.target):
                    continue
            else:
                from .vpanalyzer import analyze_weight

                _, a, b = tuple(spec.mode)
                if not analyze_weight(q, a, b).vp:
                    continue
            return q
        except (QuarticVPError, ValueError):
            continue
    raise GenerationError(
        f"could not realize {spec.label()} within {MAX_RETRIES} attempts"
    )


def corpus_jsonl(items) -> str:
    """One JSON line per corpus member: the spec and the quartic."""
    import json

    lines = []
    for spec, q in items:
        mode = "generic" if spec.mode == "generic" else list(spec.mode)
        lines.append(
            json.dumps(
                {
                    "target": spec.target.to_json(),
                    "mode": mode,
                    "seed": spec.seed,
                    "quartic": q.to_json(),
                },
                sort_keys=True,
            )
        )
    return "\n".join(lines) + "\n"


def corpus(seed: int = 0, generic_seeds: int = 8, special_seeds: int = 3):
    """Deterministic list of (spec, quartic) pairs covering every stratum.

    Strata that cannot be realized (the generator exhausts its retries)
    are skipped here; the acceptance suite probes them individually.
    """
    out = []
    for target in GENERATOR_TARGETS:
        for s in range(generic_seeds):
            spec = GenSpec(target, "generic", seed + s)
            try:
                out.append((spec, generate(spec)))
            except GenerationError:
                continue
        for weights in COLORED_WEIGHTS[(target.family, target.index)]:
            for s in range(special_seeds):
                spec = GenSpec(target, weights, seed + s)
                try:
                    out.append((spec, generate(spec)))
                except GenerationError:
                    continue
    return out
