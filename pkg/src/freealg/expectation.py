"""Trace-preserving conditional expectation onto the radial subalgebra.

The expectation of a tensor element is its orthogonal projection onto the
span of the radial elements.  Only diagonal tuples (u, ..., u) contribute:
each adds its coefficient divided by the word count at |u| to the radial
coordinate at |u|.  A slower route computes every radial coordinate as the
traced product against the degree-n radial element divided by its squared
norm; ``expect_by_definition`` keeps that route available as a cross-check.

On top of the expectation sit the defect quantities: for k-tuples of words
x = (x_1..x_k), y = (y_1..y_k) and degree n,

    defect_sq(n) = || E(x_1 v y_1 (x) ... summed over |v|=n)
                     - E(x-tensor) E(y-tensor) w_n ||^2

computed exactly.  The expectation of the middle term picks out exactly the
words v solving x_1 v y_1 = ... = x_k v y_k, so each row also records that
solution count, and the series report normalizes by the word count at n and
tracks partial sums together with the 1/word_count(n)^2 tail comparator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    Coeff,
    RadialVector,
    TensorElement,
    WordTuple,
    build_radial,
    exact_div,
)
from .groups import GroupSpec, Word


def expect(x: TensorElement) -> RadialVector:
    """Project onto the radial subalgebra (diagonal closed form)."""
    coeffs: dict[int, Coeff] = {}
    for key, c in x.coeffs.items():
        w = key[0]
        if any(u != w for u in key):
            continue
        n = len(w)
        coeffs[n] = coeffs.get(n, 0) + exact_div(c, x.spec.word_count(n))
    return RadialVector(x.spec, x.k, coeffs)


def expect_by_definition(x: TensorElement, n_max: int | None = None) -> RadialVector:
    """The same projection computed degree by degree from traced products.

    Coordinate n is trace(x * w_n) / word_count(n), evaluated by full tensor
    convolution.  Degrees beyond the longest support component contribute
    nothing, so the default range is exhaustive.
    """
    if n_max is None:
        n_max = max((max(len(w) for w in key) for key in x.coeffs), default=-1)
    coeffs: dict[int, Coeff] = {}
    for n in range(n_max + 1):
        t = (x * build_radial(x.spec, x.k, n)).trace()
        if t != 0:
            coeffs[n] = exact_div(t, x.spec.word_count(n))
    return RadialVector(x.spec, x.k, coeffs)


def nonzero_criterion(spec: GroupSpec, words: WordTuple, cross_check: bool = False) -> bool:
    """Whether the expectation of the elementary tensor of ``words`` is
    nonzero; this happens exactly when all components are equal.

    With ``cross_check`` the degree-by-degree definition is recomputed by
    explicit summation over enumerated words and compared against the
    diagonal closed form; disagreement raises RuntimeError.
    """
    if not words:
        raise ValueError("need at least one tensor component")
    first = words[0]
    answer = all(w == first for w in words[1:])
    if cross_check:
        mul = spec.multiply
        explicit: dict[int, Coeff] = {}
        for n in range(max(len(w) for w in words) + 1):
            hits = 0
            for v in spec.enumerate_words(n):
                if all(mul(w, v) == () for w in words):
                    hits += 1
            if hits:
                explicit[n] = exact_div(hits, spec.word_count(n))
        closed = expect(TensorElement.delta(spec, words))
        if explicit != closed.coeffs:
            raise RuntimeError(
                f"expectation mismatch for {words!r}: explicit {explicit} vs closed {closed.coeffs}"
            )
        if bool(explicit) != answer:
            raise RuntimeError(f"nonzero criterion mismatch for {words!r}")
    return answer


@dataclass
class DefectPoint:
    """One degree of the defect computation."""

    n: int
    solution_count: int
    defect_sq: Fraction
    realized_lengths: tuple[int, ...]


def defect(spec: GroupSpec, xs: WordTuple, ys: WordTuple, n: int) -> DefectPoint:
    """Exact squared defect at degree n for the word tuples xs, ys."""
    if len(xs) != len(ys) or not xs:
        raise ValueError("xs and ys must be non-empty tuples of equal length")
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    k = len(xs)
    mul = spec.multiply
    counts: dict[int, int] = {}
    solutions = 0
    rest = xs[1:]
    rest_y = ys[1:]
    x0, y0 = xs[0], ys[0]
    for v in spec.enumerate_words(n):
        prod = mul(mul(x0, v), y0)
        if all(mul(mul(x, v), y) == prod for x, y in zip(rest, rest_y)):
            ln = len(prod)
            counts[ln] = counts.get(ln, 0) + 1
            solutions += 1
    middle = RadialVector(
        spec, k, {ln: exact_div(c, spec.word_count(ln)) for ln, c in counts.items()}
    )
    ex = expect(TensorElement.delta(spec, xs))
    ey = expect(TensorElement.delta(spec, ys))
    if ex and ey:
        product = ex.expand() * ey.expand() * build_radial(spec, k, n)
        dsq = (middle.expand() - product).norm_sq()
    else:
        dsq = middle.norm_sq()
    return DefectPoint(
        n=n,
        solution_count=solutions,
        defect_sq=Fraction(dsq),
        realized_lengths=tuple(sorted(counts)),
    )


@dataclass
class DefectRow:
    n: int
    solution_count: int
    defect_sq: Fraction
    normalized_term: Fraction
    partial_sum: Fraction
    tail_bound: Fraction | None
    realized_lengths: tuple[int, ...]


@dataclass
class DefectReport:
    """Defect series rows for 0 <= n <= n_max.

    ``normalized_term`` divides the squared defect by the word count at n;
    ``partial_sum`` accumulates the normalized terms.  When a tuple is
    non-constant the product term vanishes and ``tail_bound`` carries the
    1/word_count(n)^2 comparator from degree ``n0`` (the sum of the maximal
    component lengths) onward.
    """

    spec_label: str
    k: int
    x_tuple: WordTuple
    y_tuple: WordTuple
    n_max: int
    n0: int
    constant_x: bool
    constant_y: bool
    k0_hypotheses: bool
    rows: list[DefectRow]

    def normalized_terms(self) -> list[Fraction]:
        return [row.normalized_term for row in self.rows]


def defect_series(spec: GroupSpec, xs: WordTuple, ys: WordTuple, n_max: int) -> DefectReport:
    """Defect rows for every degree up to n_max, with partial sums."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    if len(xs) != len(ys) or not xs:
        raise ValueError("xs and ys must be non-empty tuples of equal length")
    k = len(xs)
    constant_x = all(w == xs[0] for w in xs)
    constant_y = all(w == ys[0] for w in ys)
    n0 = max(len(w) for w in xs) + max(len(w) for w in ys)
    with_tail = not (constant_x and constant_y)
    rows: list[DefectRow] = []
    partial = Fraction(0)
    for n in range(n_max + 1):
        point = defect(spec, xs, ys, n)
        normalized = exact_div(point.defect_sq, spec.word_count(n))
        partial += normalized
        tail = None
        if with_tail and n >= n0:
            tail = Fraction(1, spec.word_count(n) ** 2)
        rows.append(
            DefectRow(
                n=n,
                solution_count=point.solution_count,
                defect_sq=point.defect_sq,
                normalized_term=normalized,
                partial_sum=partial,
                tail_bound=tail,
                realized_lengths=point.realized_lengths,
            )
        )
    return DefectReport(
        spec_label=spec.label,
        k=k,
        x_tuple=tuple(xs),
        y_tuple=tuple(ys),
        n_max=n_max,
        n0=n0,
        constant_x=constant_x,
        constant_y=constant_y,
        k0_hypotheses=(
            constant_x and constant_y and len(xs[0]) >= 2 and len(ys[0]) >= 2
        ),
        rows=rows,
    )


@dataclass
class KReductionResult:
    """Comparison of the rank-k defect against the rank-1 defect for constant
    tuples built from single words x, y.  Inside the hypotheses |x| >= 2,
    |y| >= 2, n >= |x|+|y| the two sides are expected to agree exactly."""

    x: Word
    y: Word
    k: int
    n: int
    in_hypothesis: bool
    rank_k_value: Fraction
    rank_1_value: Fraction

    @property
    def equal(self) -> bool:
        return self.rank_k_value == self.rank_1_value


def k_reduction_check(
    spec: GroupSpec, x: Word, y: Word, k: int, n: int, exploratory: bool = False
) -> KReductionResult:
    """Compute both sides of the rank-reduction equality exactly.

    Outside the hypotheses the equality is not claimed; such inputs raise
    unless ``exploratory`` is set, in which case both sides are still
    computed and the result is labeled via ``in_hypothesis``.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    in_hypothesis = len(x) >= 2 and len(y) >= 2 and n >= len(x) + len(y)
    if not in_hypothesis and not exploratory:
        raise ValueError(
            f"|x|={len(x)}, |y|={len(y)}, n={n} violate the hypotheses "
            "|x|>=2, |y|>=2, n>=|x|+|y|; pass exploratory=True to compute anyway"
        )
    lhs = defect(spec, (x,) * k, (y,) * k, n).defect_sq
    rhs = defect(spec, (x,), (y,), n).defect_sq
    return KReductionResult(
        x=x, y=y, k=k, n=n, in_hypothesis=in_hypothesis,
        rank_k_value=lhs, rank_1_value=rhs,
    )
