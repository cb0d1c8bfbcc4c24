"""Exact sparse arithmetic in group algebras and their tensor powers.

Elements are finitely supported maps from reduced words (or k-tuples of
reduced words) to exact rationals; no floating point enters any kernel.
Coefficients are stored as ``int`` or ``fractions.Fraction`` and are always
exact; zeros are never stored.

The degree-n radial element is the sum of the k-fold diagonal tensors
v (x) ... (x) v over all reduced words v of length n.  Its squared trace norm
equals the number of words of length n, the radial elements of different
degrees are orthogonal, and multiplication by the degree-1 element satisfies
a three-term length recurrence; verifiers for these facts live here and
report exact residuals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, TypeAlias

from .groups import GroupSpec, Word

Coeff: TypeAlias = "int | Fraction"
WordTuple: TypeAlias = "tuple[Word, ...]"


def exact_div(c: Coeff, d: int) -> Fraction:
    """c / d without ever leaving exact arithmetic."""
    return Fraction(c) / d


def _cleaned(coeffs: Mapping) -> dict:
    return {key: c for key, c in coeffs.items() if c != 0}


class _SparseElement:
    """Common arithmetic for the word-keyed and tuple-keyed elements."""

    __slots__ = ("spec", "coeffs")

    spec: GroupSpec
    coeffs: dict

    def _compatible(self, other) -> None:
        if type(other) is not type(self):
            raise ValueError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if self.spec != other.spec:
            raise ValueError("elements live over different group specs")

    def _same_shape(self, coeffs: dict) -> "_SparseElement":
        raise NotImplementedError

    def _key_mul(self, u, v):
        raise NotImplementedError

    def _key_inv(self, u):
        raise NotImplementedError

    def _identity_key(self):
        raise NotImplementedError

    # -- linear structure --------------------------------------------------

    def __add__(self, other):
        self._compatible(other)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            s = out.get(key, 0) + c
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return self._same_shape(out)

    def __sub__(self, other):
        self._compatible(other)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            s = out.get(key, 0) - c
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return self._same_shape(out)

    def __neg__(self):
        return self._same_shape({key: -c for key, c in self.coeffs.items()})

    def scaled(self, c: Coeff):
        if c == 0:
            return self._same_shape({})
        return self._same_shape({key: c * v for key, v in self.coeffs.items()})

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scaled(c)
        return NotImplemented

    # -- multiplicative structure -------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        self._compatible(other)
        key_mul = self._key_mul
        out: dict = {}
        get = out.get
        for u, cu in self.coeffs.items():
            for v, cv in other.coeffs.items():
                w = key_mul(u, v)
                old = get(w)
                out[w] = cu * cv if old is None else old + cu * cv
        return self._same_shape(_cleaned(out))

    def adjoint(self):
        """Involution: coefficient at u moves to the inverse of u."""
        key_inv = self._key_inv
        return self._same_shape({key_inv(u): c for u, c in self.coeffs.items()})

    # -- trace and norms -----------------------------------------------------

    def trace(self) -> Coeff:
        return self.coeffs.get(self._identity_key(), 0)

    def inner(self, other) -> Coeff:
        """Trace pairing <x, y> = tr(y* x); the word basis is orthonormal, so
        this is the coefficientwise dot product."""
        self._compatible(other)
        a, b = self.coeffs, other.coeffs
        if len(b) < len(a):
            a, b = b, a
        total: Coeff = 0
        for key, c in a.items():
            cb = b.get(key)
            if cb is not None:
                total += c * cb
        return total

    def norm_sq(self) -> Coeff:
        return sum(c * c for c in self.coeffs.values())

    # -- inspection -----------------------------------------------------------

    def coefficient(self, key) -> Coeff:
        return self.coeffs.get(key, 0)

    def support(self) -> list:
        return sorted(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            type(other) is type(self)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({len(self.coeffs)} terms, {self.spec.label})"


class AlgebraElement(_SparseElement):
    """Finitely supported Word -> rational map: a group-algebra element."""

    def __init__(self, spec: GroupSpec, coeffs: Mapping[Word, Coeff] | None = None):
        self.spec = spec
        self.coeffs = _cleaned(coeffs) if coeffs else {}

    @classmethod
    def _raw(cls, spec: GroupSpec, coeffs: dict) -> "AlgebraElement":
        el = cls.__new__(cls)
        el.spec = spec
        el.coeffs = coeffs
        return el

    @classmethod
    def zero(cls, spec: GroupSpec) -> "AlgebraElement":
        return cls._raw(spec, {})

    @classmethod
    def delta(cls, spec: GroupSpec, word: Word, coeff: Coeff = 1) -> "AlgebraElement":
        return cls(spec, {word: coeff})

    @classmethod
    def identity(cls, spec: GroupSpec) -> "AlgebraElement":
        return cls._raw(spec, {(): 1})

    def _same_shape(self, coeffs: dict) -> "AlgebraElement":
        return AlgebraElement._raw(self.spec, coeffs)

    def _key_mul(self, u, v):
        return self.spec.multiply(u, v)

    def _key_inv(self, u):
        return self.spec.inverse(u)

    def _identity_key(self):
        return ()


class TensorElement(_SparseElement):
    """Finitely supported map on k-tuples of reduced words."""

    __slots__ = ("k",)

    def __init__(self, spec: GroupSpec, k: int, coeffs: Mapping[WordTuple, Coeff] | None = None):
        if k < 1:
            raise ValueError(f"tensor rank must be >= 1, got {k}")
        self.spec = spec
        self.k = k
        self.coeffs = {}
        if coeffs:
            for key, c in coeffs.items():
                if len(key) != k:
                    raise ValueError(f"key {key!r} does not have rank {k}")
                if c != 0:
                    self.coeffs[key] = c

    @classmethod
    def _raw(cls, spec: GroupSpec, k: int, coeffs: dict) -> "TensorElement":
        el = cls.__new__(cls)
        el.spec = spec
        el.k = k
        el.coeffs = coeffs
        return el

    @classmethod
    def zero(cls, spec: GroupSpec, k: int) -> "TensorElement":
        return cls._raw(spec, k, {})

    @classmethod
    def delta(cls, spec: GroupSpec, words: WordTuple, coeff: Coeff = 1) -> "TensorElement":
        return cls(spec, len(words), {tuple(words): coeff})

    def _compatible(self, other) -> None:
        super()._compatible(other)
        if self.k != other.k:
            raise ValueError(f"tensor ranks differ: {self.k} vs {other.k}")

    def _same_shape(self, coeffs: dict) -> "TensorElement":
        return TensorElement._raw(self.spec, self.k, coeffs)

    def _key_mul(self, u, v):
        return tuple(map(self.spec.multiply, u, v))

    def _key_inv(self, u):
        return tuple(map(self.spec.inverse, u))

    def _identity_key(self):
        return ((),) * self.k

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        self._compatible(other)
        mul = self.spec.multiply
        out: dict = {}
        get = out.get
        for u, cu in self.coeffs.items():
            for v, cv in other.coeffs.items():
                w = tuple(map(mul, u, v))
                old = get(w)
                out[w] = cu * cv if old is None else old + cu * cv
        return TensorElement._raw(self.spec, self.k, _cleaned(out))

    def as_algebra_element(self) -> AlgebraElement:
        """Rank-1 tensors are group-algebra elements; unwrap the 1-tuples."""
        if self.k != 1:
            raise ValueError(f"only rank-1 tensors unwrap, got k={self.k}")
        return AlgebraElement._raw(self.spec, {key[0]: c for key, c in self.coeffs.items()})


def tensor_of(xs: Sequence[AlgebraElement]) -> TensorElement:
    """Elementary tensor x_1 (x) ... (x) x_k with product coefficients."""
    if not xs:
        raise ValueError("need at least one tensor factor")
    spec = xs[0].spec
    for x in xs[1:]:
        if x.spec != spec:
            raise ValueError("tensor factors live over different group specs")
    coeffs: dict = {(): 1}
    for x in xs:
        coeffs = {
            key + (w,): c * cw for key, c in coeffs.items() for w, cw in x.coeffs.items()
        }
    return TensorElement._raw(spec, len(xs), _cleaned(coeffs))


def tensor_pow(x: AlgebraElement, k: int) -> TensorElement:
    if k < 1:
        raise ValueError(f"tensor power needs k >= 1, got {k}")
    return tensor_of([x] * k)


def build_radial(spec: GroupSpec, k: int, n: int) -> TensorElement:
    """The degree-n radial element: sum of (v, ..., v) over all |v| = n."""
    if k < 1:
        raise ValueError(f"tensor rank must be >= 1, got {k}")
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    if k == 1:
        coeffs = dict.fromkeys(((w,) for w in spec.enumerate_words(n)), 1)
    else:
        coeffs = dict.fromkeys(((w,) * k for w in spec.enumerate_words(n)), 1)
    return TensorElement._raw(spec, k, coeffs)


class RadialVector:
    """Coordinates in the radial basis: a finitely supported map n -> rational
    standing for the sum of coefficient(n) times the degree-n radial element."""

    __slots__ = ("spec", "k", "coeffs")

    def __init__(self, spec: GroupSpec, k: int, coeffs: Mapping[int, Coeff] | None = None):
        if k < 1:
            raise ValueError(f"tensor rank must be >= 1, got {k}")
        self.spec = spec
        self.k = k
        self.coeffs = {}
        if coeffs:
            for n, c in coeffs.items():
                if n < 0:
                    raise ValueError(f"degree must be >= 0, got {n}")
                if c != 0:
                    self.coeffs[n] = c

    def _compatible(self, other: "RadialVector") -> None:
        if not isinstance(other, RadialVector):
            raise ValueError("expected a RadialVector")
        if self.spec != other.spec or self.k != other.k:
            raise ValueError("radial vectors have different spec or rank")

    def __add__(self, other: "RadialVector") -> "RadialVector":
        self._compatible(other)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            s = out.get(n, 0) + c
            if s == 0:
                out.pop(n, None)
            else:
                out[n] = s
        return RadialVector(self.spec, self.k, out)

    def __sub__(self, other: "RadialVector") -> "RadialVector":
        return self + other.scaled(-1)

    def scaled(self, c: Coeff) -> "RadialVector":
        return RadialVector(self.spec, self.k, {n: c * v for n, v in self.coeffs.items()})

    def expand(self) -> TensorElement:
        """Materialize as a tensor element (diagonal support)."""
        k = self.k
        out: dict = {}
        for n, c in self.coeffs.items():
            for w in self.spec.enumerate_words(n):
                out[(w,) * k] = c
        return TensorElement._raw(self.spec, k, out)

    def norm_sq(self) -> Coeff:
        """Squared trace norm; by orthogonality of the radial elements this is
        the sum of coefficient(n)^2 times the word count at n."""
        return sum(c * c * self.spec.word_count(n) for n, c in self.coeffs.items())

    def coefficient(self, n: int) -> Coeff:
        return self.coeffs.get(n, 0)

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RadialVector)
            and self.spec == other.spec
            and self.k == other.k
            and self.coeffs == other.coeffs
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"RadialVector(k={self.k}, {dict(sorted(self.coeffs.items()))!r})"


def radial_expand(r: RadialVector) -> TensorElement:
    return r.expand()


def radial_coordinates(x: TensorElement, strict: bool = True) -> RadialVector | None:
    """Express x in the radial basis, or detect that it is not radial.

    x is radial when every supported tuple is diagonal and, for each length,
    the whole sphere of that length carries one common coefficient.  Returns
    None when not radial and strict is False, raises otherwise.
    """
    by_len: dict[int, list] = {}
    for key, c in x.coeffs.items():
        w = key[0]
        if any(u != w for u in key):
            if strict:
                raise ValueError(f"element is not radial: off-diagonal tuple {key!r}")
            return None
        by_len.setdefault(len(w), []).append(c)
    coeffs: dict[int, Coeff] = {}
    for n, values in by_len.items():
        first = values[0]
        if len(values) != x.spec.word_count(n) or any(c != first for c in values):
            if strict:
                raise ValueError(f"element is not radial: sphere {n} is not constant")
            return None
        coeffs[n] = first
    return RadialVector(x.spec, x.k, coeffs)


# ---------------------------------------------------------------------------
# Recurrence verifiers
# ---------------------------------------------------------------------------


@dataclass
class RecurrenceRow:
    n: int
    word_count: int
    norm_sq: Coeff
    commutes: bool
    residual: TensorElement
    residual_norm_sq: Coeff


@dataclass
class RecurrenceReport:
    """Exact residuals of w1 * wn against the three-term length recurrence
    w1 * wn = w(n+1) + (p-2) wn + (m-1)(p-1) w(n-1), n >= 2, with effective
    (m, p) = (2N, 2) for free groups."""

    spec_label: str
    k: int
    n_max: int
    rows: list[RecurrenceRow]

    def all_zero(self) -> bool:
        return all(row.residual_norm_sq == 0 and row.commutes for row in self.rows)


def verify_recurrence_w1_wn(spec: GroupSpec, k: int, n_max: int) -> RecurrenceReport:
    """Check the three-term recurrence exactly for 2 <= n <= n_max."""
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    alpha, beta = spec.recurrence_coefficients()
    w1 = build_radial(spec, k, 1)
    rows = []
    prev = build_radial(spec, k, 1)
    cur = build_radial(spec, k, 2)
    for n in range(2, n_max + 1):
        nxt = build_radial(spec, k, n + 1)
        left = w1 * cur
        right = cur * w1
        commutes = left.coeffs == right.coeffs
        residual = dict(left.coeffs)
        for term, c in ((nxt, 1), (cur, alpha), (prev, beta)):
            if c == 0:
                continue
            for key in term.coeffs:
                s = residual.get(key, 0) - c
                if s == 0:
                    residual.pop(key, None)
                else:
                    residual[key] = s
        res_el = TensorElement._raw(spec, k, residual)
        rows.append(
            RecurrenceRow(
                n=n,
                word_count=spec.word_count(n),
                norm_sq=cur.norm_sq(),
                commutes=commutes,
                residual=res_el,
                residual_norm_sq=res_el.norm_sq(),
            )
        )
        prev, cur = cur, nxt
    return RecurrenceReport(spec_label=spec.label, k=k, n_max=n_max, rows=rows)


@dataclass
class W1SquaredReport:
    """Radial expansion of the square of the degree-1 radial element,
    compared against both sign variants of the degree-2 identity.

    plus form:  w2 + (p-2) w1 + m(p-1) w0
    minus form: w2 - (p-2) w1 - m(p-1) w0
    Direct expansion decides which variant holds; this reports, it never
    asserts either variant.
    """

    spec_label: str
    k: int
    is_radial: bool
    coefficients: dict[int, Coeff]
    matches_plus_form: bool
    matches_minus_form: bool


def verify_w1_squared(spec: GroupSpec, k: int) -> W1SquaredReport:
    w1 = build_radial(spec, k, 1)
    square = w1 * w1
    rv = radial_coordinates(square, strict=False)
    m, p = spec.m_effective, spec.p_effective
    plus = {n: c for n, c in {2: 1, 1: p - 2, 0: m * (p - 1)}.items() if c != 0}
    minus = {n: c for n, c in {2: 1, 1: -(p - 2), 0: -m * (p - 1)}.items() if c != 0}
    coeffs = dict(rv.coeffs) if rv is not None else {}
    return W1SquaredReport(
        spec_label=spec.label,
        k=k,
        is_radial=rv is not None,
        coefficients=coeffs,
        matches_plus_form=rv is not None and coeffs == plus,
        matches_minus_form=rv is not None and coeffs == minus,
    )
