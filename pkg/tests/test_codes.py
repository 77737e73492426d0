from __future__ import annotations

import pytest

from idemforge import (
    BudgetExceededError,
    Poly,
    UsageError,
    code_summary,
    dispatch,
    generator_polynomial,
    get_prime_field,
    instance_parameters,
    min_distance_exhaustive,
    summaries_for,
)


@pytest.fixture(scope="module")
def recs_2_7_1():
    inst = instance_parameters(2, 7, 1)
    return inst, dispatch(inst)


def test_generator_poly_2_7_1(recs_2_7_1):
    inst, recs = recs_2_7_1
    by_label = {r.label: r for r in recs}
    g = generator_polynomial(by_label["e_j:1"], 7)
    assert g.int_coeffs() == (1, 1, 1, 0, 1)  # x^4 + x^2 + x + 1
    assert 7 - g.degree == 3


def test_generator_poly_unit_sum_is_repetition(recs_2_7_1):
    inst, recs = recs_2_7_1
    g = generator_polynomial(recs[0], 7)
    assert g.int_coeffs() == (1,) * 7
    assert 7 - g.degree == 1


def test_generator_rejects_zero():
    from idemforge import CyclicRingElement

    field = get_prime_field(2)
    with pytest.raises(UsageError):
        generator_polynomial(CyclicRingElement.from_ints(field, [0] * 7), 7)


def test_generator_dimension_golden():
    inst = instance_parameters(17, 13, 2)
    recs = dispatch(inst)
    by_label = {r.label: r for r in recs}
    g = generator_polynomial(by_label["e_{s,l}:2,1"], 169)
    assert 169 - g.degree == 78


def test_min_distance_repetition_codes():
    f2 = get_prime_field(2)
    g = Poly.from_ints(f2, [1] * 7)
    assert min_distance_exhaustive(g, 7, 2) == 7
    f7 = get_prime_field(7)
    g = Poly.from_ints(f7, [1, 1, 1])
    assert min_distance_exhaustive(g, 3, 7) == 3


def test_min_distance_2_7_1_dimension_3(recs_2_7_1):
    inst, recs = recs_2_7_1
    for r in recs[1:]:
        g = generator_polynomial(r, 7)
        assert min_distance_exhaustive(g, 7, 2) == 4


def test_min_distance_budget_refusal():
    f2 = get_prime_field(2)
    g = Poly.from_ints(f2, [1, 1])
    with pytest.raises(BudgetExceededError) as err:
        min_distance_exhaustive(g, 7, 2, budget=8)
    assert err.value.required == 2**6


def test_dimensions_partition_the_ring():
    for q, p, k in [(2, 7, 1), (7, 3, 2), (3, 5, 2)]:
        inst = instance_parameters(q, p, k)
        sums = summaries_for(dispatch(inst), inst.n, q)
        assert sum(s.dimension for s in sums) == inst.n


def test_idempotent_lies_in_its_own_code(recs_2_7_1):
    inst, recs = recs_2_7_1
    field = get_prime_field(2)
    for r in recs:
        g = generator_polynomial(r, 7)
        assert (r.value.to_poly() % g).is_zero()
        # generator reconstructs x^n - 1 with its cofactor
        quot, rem = Poly.x_pow_minus_one(field, 7).divrem(g)
        assert rem.is_zero()


def test_code_summary_params_string(recs_2_7_1):
    inst, recs = recs_2_7_1
    s = code_summary(recs[1], 7, 2, with_distance=True)
    assert s.params() == "[7,3,4]"
    s = code_summary(recs[0], 7, 2)
    assert s.params() == "[7,1]" and s.min_distance is None
