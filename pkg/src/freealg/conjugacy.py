"""Brute-force solvers for the conjugacy-type equations x a = b x.

Two readings of the equation are supported for non-trivial words a, b:

* ``reduced-concat``: x . a = b . x where both juxtapositions must already be
  reduced (no cancellation and no same-factor merge at either junction, so
  the products have lengths |x|+|a| and |b|+|x|);
* ``plain``: x a = b x as group elements, cancellations allowed.

Solvers enumerate every word of a fixed length and filter, which is the
point: the uniqueness statements are verified exhaustively, never assumed.
Uniqueness is expected for every length in reduced-concat mode and only for
lengths above |a|+|b| in plain mode; below that bound counts are reported
without assertion (two solutions do occur, e.g. order-3 letters with a = b).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import GroupSpec, Word

MODE_PLAIN = "plain"
MODE_REDUCED = "reduced-concat"
MODES = (MODE_PLAIN, MODE_REDUCED)


@dataclass(frozen=True)
class EquationInstance:
    """The equation x a = b x over a spec, in one of the two modes."""

    spec: GroupSpec
    a: Word
    b: Word
    mode: str

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not self.a or not self.b:
            raise ValueError("a and b must be non-trivial words")

    @property
    def plain_uniqueness_bound(self) -> int:
        """Uniqueness in plain mode is only claimed for l above this."""
        return len(self.a) + len(self.b)


def solve_fixed_length(inst: EquationInstance, l: int) -> tuple[Word, ...]:
    """All solutions of the given length, in enumeration order."""
    spec = inst.spec
    if inst.mode == MODE_REDUCED:
        if l < 1:
            raise ValueError(f"reduced-concat mode needs l >= 1, got {l}")
        a, b = inst.a, inst.b
        reduced = spec.concat_is_reduced
        return tuple(
            x
            for x in spec.enumerate_words(l)
            if reduced(x, a) and reduced(b, x) and x + a == b + x
        )
    if l < 0:
        raise ValueError(f"plain mode needs l >= 0, got {l}")
    mul = spec.multiply
    a, b = inst.a, inst.b
    return tuple(x for x in spec.enumerate_words(l) if mul(x, a) == mul(b, x))


@dataclass
class UniquenessRow:
    l: int
    count: int
    solutions: tuple[Word, ...]
    asserted: bool
    violation: bool


@dataclass
class UniquenessReport:
    """Solution counts per length with at-most-one assertions where claimed.

    Reduced-concat mode asserts count <= 1 at every length; plain mode only
    above |a|+|b|.  A violation row would be a counterexample to the
    uniqueness statement and is recorded rather than raised.
    """

    spec_label: str
    mode: str
    a: Word
    b: Word
    l_max: int
    rows: list[UniquenessRow] = field(default_factory=list)

    def violations(self) -> list[UniquenessRow]:
        return [row for row in self.rows if row.violation]

    def ok(self) -> bool:
        return not self.violations()


def verify_uniqueness(inst: EquationInstance, l_max: int) -> UniquenessReport:
    """Sweep l = 1..l_max, asserting at-most-one in the claimed range."""
    if l_max < 1:
        raise ValueError(f"l_max must be >= 1, got {l_max}")
    report = UniquenessReport(
        spec_label=inst.spec.label,
        mode=inst.mode,
        a=inst.a,
        b=inst.b,
        l_max=l_max,
    )
    bound = inst.plain_uniqueness_bound
    for l in range(1, l_max + 1):
        solutions = solve_fixed_length(inst, l)
        asserted = inst.mode == MODE_REDUCED or l > bound
        report.rows.append(
            UniquenessRow(
                l=l,
                count=len(solutions),
                solutions=solutions,
                asserted=asserted,
                violation=asserted and len(solutions) > 1,
            )
        )
    return report


def chain_condition_equation(
    spec: GroupSpec, xs: tuple[Word, ...], ys: tuple[Word, ...], i: int, j: int
) -> EquationInstance:
    """The plain equation v (y_i y_j^-1) = (x_i^-1 x_j) v satisfied by every
    word v with x_i v y_i = x_j v y_j; requires x_i != x_j and y_i != y_j."""
    a = spec.multiply(ys[i], spec.inverse(ys[j]))
    b = spec.multiply(spec.inverse(xs[i]), xs[j])
    return EquationInstance(spec=spec, a=a, b=b, mode=MODE_PLAIN)
