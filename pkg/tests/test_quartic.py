import random

import pytest

from quarticvp.errors import FieldExtensionRequired, GeometryError
from quarticvp.field import GaussianRational, ONE, ZERO
from quarticvp.poly import linear_change, parse
from quarticvp.quartic import (
    NormalizedQuartic,
    coefficients,
    normal_form,
    normalize_at_point,
    tangent_cone_rank,
)

from conftest import random_coeff

P0 = (1, 0, 0, 0)


def test_identity_normalization():
    q = normalize_at_point(parse("x0^2*x2*x3 + x0*x1^3 + x3^4"), P0)
    assert q.A == parse("x2*x3")
    assert q.B == parse("x1^3")
    assert q.C == parse("x3^4")


def test_normalization_rejections():
    with pytest.raises(GeometryError, match="not lie"):
        normalize_at_point(parse("x0^4 + x1^4"), P0)
    with pytest.raises(GeometryError, match="nonsingular"):
        normalize_at_point(parse("x0^3*x1 + x2^4"), P0)
    with pytest.raises(GeometryError, match="exceeds 2"):
        normalize_at_point(parse("x0*x1^3 + x2^4"), P0)
    with pytest.raises(GeometryError):
        normalize_at_point(parse("x0^2*x1 + x2^3"), P0)  # not a quartic


def test_point_moved_to_origin():
    f = parse("x3^2*x1*x2 + x0^3*x1 + x0^4")
    q = normalize_at_point(f, (0, 0, 0, 1))
    assert q.A == parse("x2*x3")
    # provenance: the stored change reproduces the stored equation
    assert linear_change(f, q.change) == q.full_equation()


def test_tangent_cone_ranks():
    assert tangent_cone_rank(
        normalize_at_point(parse("x0^2*(x1^2 + x2^2 + x3^2) + x1^4"), P0)
    ) == 3
    assert tangent_cone_rank(
        normalize_at_point(parse("x0^2*x2*x3 + x1^4"), P0)
    ) == 2
    assert tangent_cone_rank(
        normalize_at_point(parse("x0^2*x3^2 + x1^4"), P0)
    ) == 1


def test_normal_form_rank2_needs_i():
    q = normalize_at_point(parse("x0^2*(x1^2 + x2^2) + x0*x1^3 + x3^4"), P0)
    q2, form = normal_form(q)
    assert form.rank == 2
    assert q2.A == parse("x2*x3")
    assert linear_change(parse("x0^2*(x1^2 + x2^2) + x0*x1^3 + x3^4"), q2.change) == q2.full_equation()


def test_normal_form_requires_field_extension():
    q = normalize_at_point(parse("x0^2*(x1^2 + 2*x2^2) + x0*x1^3 + x3^4"), P0)
    with pytest.raises(FieldExtensionRequired):
        normal_form(q)
    # rank 1 with a nonsquare scale fails too
    q = normalize_at_point(parse("x0^2*(2*x3^2) + x0*x1^3 + x2^4"), P0)
    with pytest.raises(FieldExtensionRequired):
        normal_form(q)


def test_normal_form_rank1():
    q = normalize_at_point(
        parse("x0^2*(x1^2 + 2*x1*x3 + x3^2) + x0*x2^3 + x1^4"), P0
    )
    q2, form = normal_form(q)
    assert form.rank == 1
    assert q2.A == parse("x3^2")


def test_rank_invariant_under_point_fixing_changes():
    rng = random.Random(23)
    f = parse("x0^2*x2*x3 + x0*(x1^2*x2 + x2^3) + x1^4 + x3^4")
    base_rank = tangent_cone_rank(normalize_at_point(f, P0))
    from quarticvp.quartic import mat_inverse

    count = 0
    while count < 10:
        # fixing P = (1:0:0:0) means the first column is (1, 0, 0, 0)
        matrix = [[ZERO] * 4 for _ in range(4)]
        matrix[0][0] = ONE
        for j in range(1, 4):
            matrix[0][j] = random_coeff(rng)
            for i in range(1, 4):
                matrix[i][j] = random_coeff(rng)
        matrix = tuple(tuple(row) for row in matrix)
        try:
            mat_inverse(matrix)
        except ValueError:
            continue
        count += 1
        moved = linear_change(f, matrix)
        assert tangent_cone_rank(normalize_at_point(moved, P0)) == base_rank


def test_coefficient_table_and_reconstruction():
    q = normalize_at_point(parse("x0^2*x2*x3 + x0*x1^3 + x2^4"), P0)
    table = coefficients(q)
    assert table.b0.is_one()
    assert table.lam0.is_one()
    assert all(
        getattr(table, name).is_zero()
        for name in ("beta2", "beta3", "c0", "lam4")
    )
    assert table.reconstruct_b() == q.B
    assert table.reconstruct_c() == q.C


def test_a19_named_coefficients(a19_pair):
    _, eq1 = a19_pair
    table = coefficients(normalize_at_point(eq1, P0))
    assert table.b0 == ZERO
    assert table.beta2 == GaussianRational(4)
    assert table.beta3 == GaussianRational(4)
    assert table.c0 == GaussianRational(16)
    # the often-miscited -4i coefficient lives in the delta2 slot
    assert table.delta2 == GaussianRational(0, -4)
    assert table.delta3 == GaussianRational(0, 4)


def test_coefficients_requires_normal_form():
    q = normalize_at_point(parse("x0^2*(x1^2 + x2^2 + x3^2) + x1^4"), P0)
    with pytest.raises(GeometryError):
        coefficients(q)


def test_json_roundtrip():
    q = normalize_at_point(parse("x0^2*x2*x3 + x0*x1^3 + x2^4 - 4*i*x1^3*x2"), P0)
    data = q.to_json()
    back = NormalizedQuartic.from_json(data)
    assert back.A == q.A and back.B == q.B and back.C == q.C
    assert back.change == q.change
