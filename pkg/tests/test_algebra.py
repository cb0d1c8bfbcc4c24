"""Sparse exact algebra: convolution, trace, tensors, radial elements."""

import random
from fractions import Fraction

import pytest

from freealg.algebra import (
    AlgebraElement,
    RadialVector,
    TensorElement,
    build_radial,
    radial_coordinates,
    radial_expand,
    tensor_of,
    tensor_pow,
    verify_recurrence_w1_wn,
    verify_w1_squared,
)

from conftest import make_spec
from test_groups import random_word

# ---------------------------------------------------------------------------
# Independent convolution oracle: multiply support words by re-reducing the
# concatenated letter sequences (a different code path than the junction scan
# used by spec.multiply).
# ---------------------------------------------------------------------------


def oracle_convolve(spec, x: dict, y: dict) -> dict:
    out = {}
    for u, cu in x.items():
        for v, cv in y.items():
            w = spec.reduce(spec.letters_of(u) + spec.letters_of(v))
            out[w] = out.get(w, 0) + cu * cv
    return {w: c for w, c in out.items() if c != 0}


def w1_element(spec):
    return AlgebraElement(spec, {w: 1 for w in spec.enumerate_words(1)})


def random_element(spec, rng, n_terms=4, max_raw=6):
    coeffs = {}
    for _ in range(n_terms):
        w = random_word(spec, rng, max_raw)
        coeffs[w] = coeffs.get(w, 0) + Fraction(rng.randint(-4, 4), rng.randint(1, 5))
    return AlgebraElement(spec, coeffs)


# ---------------------------------------------------------------------------
# Convolution
# ---------------------------------------------------------------------------


def test_identity_is_neutral(fp32):
    rng = random.Random(1)
    x = random_element(fp32, rng)
    e = AlgebraElement.identity(fp32)
    assert e * x == x
    assert x * e == x


def test_involution_letter_squares_to_identity(fp32):
    a = AlgebraElement.delta(fp32, fp32.reduce([(0, 1)]))
    assert a * a == AlgebraElement.identity(fp32)


def test_w1_squared_fp32_hand_expansion(fp32):
    # (a+b+c)^2 = 3e + (all six words of length 2)
    w1 = w1_element(fp32)
    square = w1 * w1
    expected = {(): 3}
    expected.update({w: 1 for w in fp32.enumerate_words(2)})
    assert square.coeffs == expected
    assert square.coeffs == oracle_convolve(fp32, w1.coeffs, w1.coeffs)


def test_w1_squared_fp33_hand_expansion(fp33):
    # 36 letter products: 6 hit the identity, each degree-1 word is hit once,
    # and the 24 cross-factor products are exactly the degree-2 words
    w1 = w1_element(fp33)
    square = w1 * w1
    expected = {(): 6}
    expected.update({w: 1 for w in fp33.enumerate_words(1)})
    expected.update({w: 1 for w in fp33.enumerate_words(2)})
    assert square.coeffs == expected
    assert square.coeffs == oracle_convolve(fp33, w1.coeffs, w1.coeffs)


def test_w1_squared_free2_hand_expansion(free2):
    w1 = w1_element(free2)
    square = w1 * w1
    expected = {(): 4}
    expected.update({w: 1 for w in free2.enumerate_words(2)})
    assert square.coeffs == expected


def test_convolve_matches_oracle_on_random_elements():
    rng = random.Random(42)
    for label in ["fp:3x2", "fp:3x3", "free:2"]:
        spec = make_spec(label)
        for _ in range(25):
            x = random_element(spec, rng)
            y = random_element(spec, rng)
            assert (x * y).coeffs == oracle_convolve(spec, x.coeffs, y.coeffs)


def test_convolution_is_associative_and_bilinear(fp33):
    rng = random.Random(5)
    for _ in range(10):
        x, y, z = (random_element(fp33, rng, 3) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert (x + y) * z == x * z + y * z
        assert x * (y + z) == x * y + x * z


def test_spec_mismatch_rejected(fp32, fp33):
    x = AlgebraElement.identity(fp32)
    y = AlgebraElement.identity(fp33)
    with pytest.raises(ValueError):
        _ = x * y
    with pytest.raises(ValueError):
        _ = x + y


# ---------------------------------------------------------------------------
# Adjoint, trace, inner product
# ---------------------------------------------------------------------------


def test_adjoint_examples(fp33):
    g = fp33.reduce([(0, 1)])
    assert AlgebraElement.delta(fp33, g).adjoint() == AlgebraElement.delta(
        fp33, fp33.inverse(g)
    )
    wn = AlgebraElement(fp33, {w: 1 for w in fp33.enumerate_words(3)})
    assert wn.adjoint() == wn  # length spheres are closed under inversion


def test_adjoint_is_involutive_antihomomorphism(fp33):
    rng = random.Random(9)
    for _ in range(10):
        x = random_element(fp33, rng, 3)
        y = random_element(fp33, rng, 3)
        assert x.adjoint().adjoint() == x
        assert (x * y).adjoint() == y.adjoint() * x.adjoint()


def test_trace_examples(fp32):
    assert AlgebraElement.identity(fp32).trace() == 1
    for n in range(1, 4):
        wn = AlgebraElement(fp32, {w: 1 for w in fp32.enumerate_words(n)})
        assert wn.trace() == 0
    w1 = w1_element(fp32)
    assert (w1 * w1).trace() == 3  # squared norm of w1


def test_trace_is_tracial(fp33, free2):
    rng = random.Random(11)
    for spec in (fp33, free2):
        for _ in range(15):
            x = random_element(spec, rng, 3)
            y = random_element(spec, rng, 3)
            assert (x * y).trace() == (y * x).trace()


def test_inner_product_agrees_with_traced_convolution(fp33):
    rng = random.Random(13)
    for _ in range(15):
        x = random_element(fp33, rng, 3)
        y = random_element(fp33, rng, 3)
        assert x.inner(y) == (y.adjoint() * x).trace()
    x = random_element(fp33, rng)
    assert x.norm_sq() == x.inner(x)
    assert AlgebraElement.delta(fp33, fp33.reduce([(0, 1)])).norm_sq() == 1
    assert AlgebraElement.zero(fp33).norm_sq() == 0


# ---------------------------------------------------------------------------
# Tensors
# ---------------------------------------------------------------------------


def test_tensor_pow_of_delta_is_diagonal(fp32):
    g = fp32.reduce([(0, 1)])
    t = tensor_pow(AlgebraElement.delta(fp32, g), 3)
    assert t.coeffs == {(g, g, g): 1}


def test_tensor_of_distinct_words_is_off_diagonal(fp32):
    u = fp32.reduce([(0, 1)])
    v = fp32.reduce([(1, 1)])
    t = tensor_of([AlgebraElement.delta(fp32, u), AlgebraElement.delta(fp32, v)])
    assert t.coeffs == {(u, v): 1}


def test_tensor_trace_and_norm_multiplicative(fp33):
    rng = random.Random(17)
    for k in (2, 3):
        xs = [random_element(fp33, rng, 3) for _ in range(k)]
        t = tensor_of(xs)
        prod_trace = 1
        prod_norm = 1
        for x in xs:
            prod_trace *= x.trace()
            prod_norm *= x.norm_sq()
        assert t.trace() == prod_trace
        assert t.norm_sq() == prod_norm
        x = random_element(fp33, rng, 3)
        assert tensor_pow(x, k).norm_sq() == x.norm_sq() ** k


def test_tensor_adjoint_moves_tuples(fp32):
    u = fp32.reduce([(0, 1), (1, 1)])
    v = fp32.reduce([(2, 1)])
    t = TensorElement.delta(fp32, (u, v), 2)
    ti = t.adjoint()
    assert ti.coeffs == {(fp32.inverse(u), fp32.inverse(v)): 2}
    assert ti.adjoint() == t


def test_tensor_rank_mismatch_rejected(fp32):
    with pytest.raises(ValueError):
        _ = build_radial(fp32, 2, 1) * build_radial(fp32, 3, 1)
    with pytest.raises(ValueError):
        TensorElement(fp32, 2, {(fp32.reduce([(0, 1)]),): 1})


# ---------------------------------------------------------------------------
# Radial elements and vectors
# ---------------------------------------------------------------------------


def test_radial_degree_zero_is_identity_tuple(fp32):
    assert build_radial(fp32, 3, 0).coeffs == {((), (), ()): 1}


def test_radial_degree_one_k2(fp32):
    letters = [fp32.reduce([p]) for p in [(0, 1), (1, 1), (2, 1)]]
    assert build_radial(fp32, 2, 1).coeffs == {(w, w): 1 for w in letters}


def test_radial_norm_matches_word_count_and_is_k_independent(desk_specs):
    for spec in desk_specs.values():
        for n in range(4):
            counts = {build_radial(spec, k, n).norm_sq() for k in (1, 2, 3)}
            assert counts == {spec.word_count(n)}


def test_radial_orthogonality(fp33):
    for k in (1, 2):
        elements = {n: build_radial(fp33, k, n) for n in range(4)}
        for n in range(4):
            for m in range(4):
                expected = fp33.word_count(n) if n == m else 0
                assert elements[n].inner(elements[m]) == expected


def test_radial_expand_and_parseval(fp32):
    zero = RadialVector(fp32, 2)
    assert radial_expand(zero).is_zero()
    unit = RadialVector(fp32, 2, {1: 1})
    assert radial_expand(unit) == build_radial(fp32, 2, 1)
    r = RadialVector(fp32, 1, {2: Fraction(1, 6)})
    assert r.norm_sq() == Fraction(1, 6)
    assert radial_expand(r).norm_sq() == Fraction(1, 6)


def test_parseval_on_random_radial_vectors(fp33):
    rng = random.Random(23)
    for k in (1, 2):
        for _ in range(10):
            r = RadialVector(
                fp33,
                k,
                {n: Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for n in range(4)},
            )
            assert radial_expand(r).norm_sq() == r.norm_sq()
            back = radial_coordinates(radial_expand(r))
            assert back == r


def test_radial_coordinates_detects_non_radial(fp32):
    u = fp32.reduce([(0, 1)])
    v = fp32.reduce([(1, 1)])
    off_diagonal = TensorElement.delta(fp32, (u, v))
    assert radial_coordinates(off_diagonal, strict=False) is None
    with pytest.raises(ValueError):
        radial_coordinates(off_diagonal)
    partial_sphere = TensorElement.delta(fp32, (u, u))
    assert radial_coordinates(partial_sphere, strict=False) is None


# ---------------------------------------------------------------------------
# Recurrences
# ---------------------------------------------------------------------------


def test_recurrence_fp32_n2_explicit(fp32):
    # w1 w2 = w3 + 2 w1; check the product itself, then the report
    w1 = build_radial(fp32, 1, 1)
    w2 = build_radial(fp32, 1, 2)
    expected = build_radial(fp32, 1, 3) + build_radial(fp32, 1, 1).scaled(2)
    assert w1 * w2 == expected
    report = verify_recurrence_w1_wn(fp32, 1, 2)
    assert report.all_zero()


def test_recurrence_fp33_n2_explicit(fp33):
    # p = 3: w1 w2 = w3 + w2 + 4 w1
    w1 = build_radial(fp33, 1, 1)
    w2 = build_radial(fp33, 1, 2)
    expected = (
        build_radial(fp33, 1, 3)
        + build_radial(fp33, 1, 2)
        + build_radial(fp33, 1, 1).scaled(4)
    )
    assert w1 * w2 == expected


def test_recurrence_free2_n3_explicit(free2):
    # effective (m, p) = (4, 2): w1 w3 = w4 + 3 w2
    w1 = build_radial(free2, 1, 1)
    w3 = build_radial(free2, 1, 3)
    expected = build_radial(free2, 1, 4) + build_radial(free2, 1, 2).scaled(3)
    assert w1 * w3 == expected


def test_recurrence_report_small_sweep(desk_specs):
    for label in ["fp:3x2", "fp:3x3", "free:2"]:
        for k in (1, 2):
            report = verify_recurrence_w1_wn(desk_specs[label], k, 4)
            assert report.all_zero(), (label, k)
            assert [row.n for row in report.rows] == [2, 3, 4]
            for row in report.rows:
                assert row.norm_sq == row.word_count


def test_w1_squared_report_verdicts(desk_specs):
    for label, expected_zero_coeff in [
        ("fp:3x2", 3),
        ("fp:3x3", 6),
        ("fp:4x3", 8),
        ("free:2", 4),
    ]:
        report = verify_w1_squared(desk_specs[label], 1)
        assert report.is_radial
        assert report.matches_plus_form, label
        assert not report.matches_minus_form, label
        assert report.coefficients[0] == expected_zero_coeff
        assert report.coefficients[2] == 1


def test_w1_squared_report_k2(fp33):
    report = verify_w1_squared(fp33, 2)
    assert report.matches_plus_form
    assert report.coefficients == {0: 6, 1: 1, 2: 1}
