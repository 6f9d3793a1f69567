"""Acceptance suite: one test per criterion, exact comparisons throughout.

Each test prints a single PASS/FAIL line (visible with ``pytest -s`` or in
the failure report).  Criteria 4 and 5 compare against the claimed
result tables cell by cell; cells whose defining conditions cannot be met
by any normal quartic fail here and are documented in the project notes.
"""

from __future__ import annotations

import math
import random

import pytest

from quarticvp import fixtures
from quarticvp.errors import GenerationError
from quarticvp.generator import COLORED_WEIGHTS, GenSpec, generate
from quarticvp.poly import format_poly, parse
from quarticvp.quartic import normalize_at_point
from quarticvp.singclass import TypeTag, classify
from quarticvp.tables import (
    BLACK_WEIGHTS,
    CONDITIONS_A,
    CONDITIONS_DE,
    LINK_ROWS,
    RESULT_ROWS,
    compute_condition_table,
)
from quarticvp.vpanalyzer import analyze_weight, enumerate_vp, sarkisov_filter, vp_set

P0 = (1, 0, 0, 0)
SEEDS = (0, 1, 2)

_witnesses: dict = {}


def witness(target: TypeTag, mode):
    """First realizable witness over the standard seeds, memoized."""
    key = (target.family, target.index, target.exact, mode)
    if key not in _witnesses:
        result = None
        for seed in SEEDS:
            try:
                result = generate(GenSpec(target, mode, seed))
                break
            except GenerationError:
                continue
        _witnesses[key] = result
    return _witnesses[key]


def report(number: int, label: str, failures: list):
    status = "PASS" if not failures else "FAIL"
    print(f"criterion {number} ({label}): {status}")
    for f in failures:
        print(f"    {f}")
    assert not failures, f"criterion {number}: {failures}"


@pytest.fixture(scope="module")
def full_corpus():
    from quarticvp.generator import corpus

    items = corpus(seed=0, generic_seeds=8, special_seeds=3)
    assert len(items) >= 200
    return items


@pytest.fixture(scope="module")
def key_lemma_sweep(full_corpus):
    """analyze_weight over every coprime (a, b) with a + b <= 12.

    analyze_weight itself raises ConsistencyViolation on any direct vs
    stepwise disagreement, so completing the sweep is the equivalence.
    """
    pairs = [
        (a, b)
        for a in range(1, 12)
        for b in range(a, 12)
        if math.gcd(a, b) == 1 and a + b <= 12
    ]
    results = []
    for spec, q in full_corpus:
        verdicts = [analyze_weight(q, a, b) for a, b in pairs]
        results.append((spec, verdicts))
    return results


def test_criterion_1_a19_classification():
    q = normalize_at_point(fixtures.a19_tangent_cone_form(), P0)
    tag, _ = classify(q)
    failures = []
    if not (tag.family == "A" and tag.index == 8 and not tag.exact):
        failures.append(f"classified {tag.label()}, expected A>=8")
    report(1, "A19 fixture classifies as A>=8", failures)


def test_criterion_2_a19_vp_set():
    q = normalize_at_point(fixtures.a19_tangent_cone_form(), P0)
    weights = vp_set(enumerate_vp(q, max_a=4, max_b=12))
    failures = []
    if weights != {(1, 1, 1), (1, 1, 2)}:
        failures.append(f"vp set {sorted(weights)}")
    report(2, "A19 vp weights are exactly (1,1,1),(1,1,2)", failures)


def test_criterion_3_coordinate_change_round_trip():
    image = fixtures.a19_coordinate_change(fixtures.a19_original())
    failures = []
    if image != fixtures.a19_tangent_cone_form():
        failures.append("substitution image differs from the fixture")
    report(3, "recorded coordinate change is term-for-term exact", failures)


def test_criterion_4_result_table_rows():
    failures = []
    for tag in RESULT_ROWS:
        key = (tag.family, tag.index)
        black = set(BLACK_WEIGHTS.get(key, ((1, 1, 1), (1, 1, 2))))
        for seed in SEEDS:
            try:
                q = generate(GenSpec(tag, "generic", seed))
            except GenerationError:
                failures.append(f"{tag.label()} generic seed {seed}: generation failed")
                continue
            got = vp_set(enumerate_vp(q, tag=tag))
            if got != black:
                failures.append(
                    f"{tag.label()} generic seed {seed}: vp set {sorted(got)} "
                    f"!= black {sorted(black)}"
                )
        for weights in COLORED_WEIGHTS[key]:
            q = witness(tag, weights)
            if q is None:
                failures.append(f"{tag.label()} colored {weights}: no witness realizable")
                continue
            if weights not in vp_set(enumerate_vp(q, tag=tag)):
                failures.append(
                    f"{tag.label()} colored {weights}: witness vp set misses it"
                )
    report(4, "result table rows (generic black sets, colored containment)", failures)


def test_criterion_5_link_table_rows():
    failures = []
    for row, tags, claimed in LINK_ROWS:
        got = set()
        for tag in tags:
            modes = ["generic"] + list(COLORED_WEIGHTS[(tag.family, tag.index)])
            for mode in modes:
                q = witness(tag, mode)
                if q is None:
                    continue
                got |= {v.weights for v in sarkisov_filter(enumerate_vp(q, tag=tag))}
        if got != set(claimed):
            failures.append(f"row {row}: {sorted(got)} != {sorted(set(claimed))}")
    report(5, "link table rows after the Sarkisov filter", failures)


def test_criterion_6_key_lemma_equivalence(key_lemma_sweep):
    failures = []
    instances = len(key_lemma_sweep)
    assignments = 0
    for spec, verdicts in key_lemma_sweep:
        for verdict in verdicts:
            for result in verdict.results:
                assignments += 1
                if (result.discrepancy == 0) != result.stepwise_vp:
                    failures.append(f"{spec.label()} {result.assignment}")
    print(f"    checked {instances} instances, {assignments} assignments")
    if instances < 200:
        failures.append(f"only {instances} corpus instances")
    report(6, "stepwise vp iff direct discrepancy zero", failures)


def test_criterion_7_bounds(key_lemma_sweep):
    failures = []
    for spec, verdicts in key_lemma_sweep:
        for verdict in verdicts:
            for result in verdict.results:
                if result.discrepancy < 0:
                    failures.append(
                        f"{spec.label()} {result.assignment}: negative discrepancy"
                    )
        if spec.target.family == "A" and spec.target.exact:
            n = spec.target.index
            for verdict in verdicts:
                if verdict.vp and not (
                    verdict.a <= (n + 1) // 2 and verdict.a + verdict.b <= n + 1
                ):
                    failures.append(f"{spec.label()}: vp weight {verdict.weights}")
    report(7, "a <= ceil(n/2), a+b <= n+1 on A_n; discrepancies >= 0", failures)


def test_criterion_8_condition_table_toggling():
    failures = []
    for family, table in (("A", CONDITIONS_A), ("DE", CONDITIONS_DE)):
        for trial in range(20):
            outcomes = compute_condition_table(family, seed=trial)
            for ray, outcome in outcomes.items():
                if not outcome["vp_when_met"]:
                    failures.append(f"{family} {ray} trial {trial}: conforming not vp")
                if not outcome["toggles_flip"]:
                    failures.append(
                        f"{family} {ray} trial {trial}: {outcome['note']}"
                    )
    report(8, "condition tables: met iff vp, single toggles flip", failures)


def test_criterion_9_resolution_counts():
    failures = []
    for n in range(1, 8):
        expected = (n + 1) // 2
        for seed in SEEDS:
            q = generate(GenSpec(TypeTag("A", n), "generic", seed))
            _, cert = classify(q)
            if cert.steps_consumed() != expected:
                failures.append(
                    f"A{n} seed {seed}: {cert.steps_consumed()} steps != {expected}"
                )
    refinement_chains = {
        ("D", 5): ["D5 <- A3"],
        ("D", 6): ["D6 <- D4"],
        ("D", 7): ["D5 <- A3", "D7 <- D5"],
        ("D", 8): ["D6 <- D4", "D8 <- D6"],
        ("D", 9): ["D5 <- A3", "D7 <- D5", "D9 <- D7"],
        ("D", 10): ["D6 <- D4", "D8 <- D6", "D10 <- D8"],
        ("E", 6): ["E6 <- A5"],
        ("E", 7): ["D6 <- D4", "E7 <- D6"],
        ("E", 8): ["D6 <- D4", "E7 <- D6", "E8 <- E7"],
    }
    for (family, index), chain in refinement_chains.items():
        for seed in SEEDS:
            q = generate(GenSpec(TypeTag(family, index), "generic", seed))
            _, cert = classify(q)
            if cert.refinement_chain() != chain:
                failures.append(
                    f"{family}{index} seed {seed}: {cert.refinement_chain()}"
                )
    report(9, "criteria step counts and refinement chains", failures)


def test_criterion_10_kernel_properties():
    from conftest import random_poly
    from quarticvp.poly import linear_change, substitute, weighted_order
    from quarticvp.quartic import mat_inverse
    from quarticvp.field import GaussianRational

    failures = []
    rng = random.Random(2024)
    for _ in range(1000):
        f = random_poly(rng)
        if parse(format_poly(f)) != f:
            failures.append(f"round trip: {format_poly(f)}")
            break
    for _ in range(1000):
        f = substitute(random_poly(rng), {0: parse("1")})
        g = substitute(random_poly(rng), {0: parse("1")})
        if f.is_zero() or g.is_zero():
            continue
        w = (rng.randint(1, 5), rng.randint(1, 5), rng.randint(1, 5))
        if weighted_order(f * g, w) != weighted_order(f, w) + weighted_order(g, w):
            failures.append("valuation additivity")
            break
    done = 0
    while done < 100:
        matrix = tuple(
            tuple(GaussianRational(rng.randint(-3, 3)) for _ in range(4))
            for _ in range(4)
        )
        try:
            inverse = mat_inverse(matrix)
        except ValueError:
            continue
        done += 1
        f = random_poly(rng)
        if linear_change(linear_change(f, matrix), inverse) != f:
            failures.append("substitution inverse identity")
            break
    report(10, "kernel round-trips, valuation, substitution inverse", failures)
