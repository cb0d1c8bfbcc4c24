"""Conditional expectation, the all-equal criterion, and defect quantities."""

import itertools
import random
from fractions import Fraction

import pytest

from freealg.algebra import (
    AlgebraElement,
    RadialVector,
    TensorElement,
    build_radial,
    radial_coordinates,
    tensor_of,
)
from freealg.expectation import (
    defect,
    defect_series,
    expect,
    expect_by_definition,
    k_reduction_check,
    nonzero_criterion,
)

from test_groups import random_word


def random_tensor(spec, rng, k, n_terms=4, max_raw=5):
    coeffs = {}
    for _ in range(n_terms):
        key = tuple(random_word(spec, rng, max_raw) for _ in range(k))
        coeffs[key] = coeffs.get(key, 0) + Fraction(rng.randint(-4, 4), rng.randint(1, 5))
    return TensorElement(spec, k, coeffs)


# ---------------------------------------------------------------------------
# Expectation
# ---------------------------------------------------------------------------


def test_expect_of_diagonal_delta(fp32):
    v = fp32.reduce([(0, 1), (1, 1)])
    for k in (1, 2, 3):
        rv = expect(TensorElement.delta(fp32, (v,) * k))
        assert rv.coeffs == {2: Fraction(1, 6)}


def test_expect_of_off_diagonal_delta_is_zero(fp32):
    u = fp32.reduce([(0, 1)])
    v = fp32.reduce([(1, 1)])
    assert expect(TensorElement.delta(fp32, (u, v))).is_zero()


def test_expect_fixes_radial_elements(fp33):
    for k in (1, 2):
        for n in range(4):
            rv = expect(build_radial(fp33, k, n))
            assert rv.coeffs == {n: 1}


def test_expect_is_linear_trace_preserving_idempotent(fp33):
    rng = random.Random(31)
    for k in (1, 2):
        for _ in range(8):
            x = random_tensor(fp33, rng, k)
            y = random_tensor(fp33, rng, k)
            assert expect(x + y) == expect(x) + expect(y)
            assert expect(x).expand().trace() == x.trace()
            assert expect(expect(x).expand()) == expect(x)
            assert expect(x.adjoint()) == expect(x)


def test_expect_closed_form_matches_definition(fp32, fp33):
    rng = random.Random(37)
    for spec in (fp32, fp33):
        for k in (1, 2, 3):
            for _ in range(6):
                x = random_tensor(spec, rng, k, max_raw=4)
                assert expect(x) == expect_by_definition(x)


def test_expect_bimodule_property(fp32):
    # E(r x s) = r E(x) s for radial r, s: the expectation is a bimodule map
    # over its range
    rng = random.Random(41)
    for k in (1, 2):
        for _ in range(6):
            r = RadialVector(fp32, k, {rng.randrange(3): Fraction(rng.randint(1, 3))})
            s = RadialVector(fp32, k, {rng.randrange(3): Fraction(rng.randint(1, 3))})
            x = random_tensor(fp32, rng, k, n_terms=3, max_raw=4)
            lhs = expect(r.expand() * x * s.expand())
            rhs = radial_coordinates(r.expand() * expect(x).expand() * s.expand())
            assert lhs == rhs


# ---------------------------------------------------------------------------
# All-equal criterion
# ---------------------------------------------------------------------------


def test_nonzero_criterion_basic(fp32):
    u = fp32.reduce([(0, 1), (1, 1)])
    v = fp32.reduce([(1, 1), (0, 1)])
    assert nonzero_criterion(fp32, (u, u, u), cross_check=True)
    assert not nonzero_criterion(fp32, (u, v), cross_check=True)
    assert nonzero_criterion(fp32, (u,), cross_check=True)  # k = 1
    with pytest.raises(ValueError):
        nonzero_criterion(fp32, ())


def test_nonzero_criterion_exhaustive_small(fp33):
    words = [w for n in range(3) for w in fp33.enumerate_words(n)]
    for pair in itertools.product(words, repeat=2):
        expected = pair[0] == pair[1]
        assert nonzero_criterion(fp33, pair, cross_check=True) is expected


# ---------------------------------------------------------------------------
# Defects
# ---------------------------------------------------------------------------


def test_defect_oracle_by_full_expansion(fp32):
    """Reproduce the k=1 defect at n=1 for x=a, y=bc through the slow
    definition route before trusting the closed-form kernel."""
    a = fp32.reduce([(0, 1)])
    bc = fp32.reduce([(1, 1), (2, 1)])
    k1 = 1
    x_el = TensorElement.delta(fp32, (a,))
    y_el = TensorElement.delta(fp32, (bc,))
    w1 = build_radial(fp32, k1, 1)
    middle = expect_by_definition(x_el * w1 * y_el)
    assert middle.coeffs == {2: Fraction(1, 3), 4: Fraction(1, 24)}
    ex = expect_by_definition(x_el)
    ey = expect_by_definition(y_el)
    assert ex.coeffs == {1: Fraction(1, 3)}
    assert ey.coeffs == {2: Fraction(1, 6)}
    product = ex.expand() * ey.expand() * w1
    assert radial_coordinates(product).coeffs == {
        0: Fraction(1, 3),
        2: Fraction(2, 9),
        4: Fraction(1, 18),
    }
    oracle_value = (middle.expand() - product).norm_sq()
    assert oracle_value == Fraction(41, 216)
    point = defect(fp32, (a,), (bc,), 1)
    assert point.defect_sq == Fraction(41, 216)
    assert point.solution_count == 3  # every degree-1 word contributes at k=1


def test_defect_zero_product_path(fp32):
    # non-constant tuples: the product term vanishes and the defect is the
    # squared norm of the expectation of the middle term alone
    a = fp32.reduce([(0, 1)])
    b = fp32.reduce([(1, 1)])
    c = fp32.reduce([(2, 1)])
    point = defect(fp32, (a, b), (b, c), 3)
    recomputed = 0
    mul = fp32.multiply
    for v in fp32.enumerate_words(3):
        p1 = mul(mul(a, v), b)
        p2 = mul(mul(b, v), c)
        if p1 == p2:
            recomputed += Fraction(1, fp32.word_count(len(p1)))
    # at most one solution here, so the norm is count / word_count(length)
    assert point.solution_count <= 1
    if point.solution_count:
        length = point.realized_lengths[0]
        assert point.defect_sq == Fraction(1, fp32.word_count(length))
    else:
        assert point.defect_sq == 0


def test_defect_series_structure(fp32):
    a = fp32.reduce([(0, 1)])
    b = fp32.reduce([(1, 1)])
    ab = fp32.reduce([(0, 1), (1, 1)])
    report = defect_series(fp32, (a, b), (ab, b), 6)
    assert report.n0 == 3
    assert not report.constant_x
    assert not report.k0_hypotheses
    assert [row.n for row in report.rows] == list(range(7))
    partial = Fraction(0)
    for row in report.rows:
        assert row.defect_sq >= 0
        assert row.normalized_term == row.defect_sq / fp32.word_count(row.n)
        partial += row.normalized_term
        assert row.partial_sum == partial
        if row.n >= report.n0:
            assert row.tail_bound == Fraction(1, fp32.word_count(row.n) ** 2)
            assert row.solution_count <= 1
        else:
            assert row.tail_bound is None


def test_defect_series_constant_tuples_match_rank_one(fp32):
    # constant tuples of length-2 words: the rank-2 rows equal the rank-1
    # rows once n reaches the combined length
    x = fp32.reduce([(0, 1), (1, 1)])
    y = fp32.reduce([(2, 1), (0, 1)])
    rep2 = defect_series(fp32, (x, x), (y, y), 6)
    rep1 = defect_series(fp32, (x,), (y,), 6)
    assert rep2.k0_hypotheses
    for row2, row1 in zip(rep2.rows, rep1.rows):
        if row2.n >= 4:
            assert row2.defect_sq == row1.defect_sq


def test_k_reduction_example(fp32):
    x = fp32.reduce([(0, 1), (1, 1)])  # ab
    y = fp32.reduce([(2, 1), (0, 1)])  # ca
    res = k_reduction_check(fp32, x, y, 2, 4)
    assert res.in_hypothesis
    assert res.equal, (res.rank_k_value, res.rank_1_value)
    res3 = k_reduction_check(fp32, x, y, 3, 5)
    assert res3.equal


def test_k_reduction_trivial_at_rank_one(fp32):
    x = fp32.reduce([(0, 1), (1, 1)])
    y = fp32.reduce([(1, 1), (2, 1)])
    res = k_reduction_check(fp32, x, y, 1, 4)
    assert res.equal  # both sides are literally the same computation


def test_k_reduction_hypothesis_enforcement(fp32):
    a = fp32.reduce([(0, 1)])
    y = fp32.reduce([(1, 1), (2, 1)])
    with pytest.raises(ValueError):
        k_reduction_check(fp32, a, y, 2, 4)
    res = k_reduction_check(fp32, a, y, 2, 4, exploratory=True)
    assert not res.in_hypothesis
    ab = fp32.reduce([(0, 1), (1, 1)])
    with pytest.raises(ValueError):
        k_reduction_check(fp32, ab, y, 2, 3)  # n below |x|+|y|


def test_solution_count_multiplicities_accumulate(fp33):
    # sanity: at rank 1 every enumerated word contributes once
    a = fp33.reduce([(0, 1)])
    point = defect(fp33, (a,), (a,), 2)
    assert point.solution_count == fp33.word_count(2)
