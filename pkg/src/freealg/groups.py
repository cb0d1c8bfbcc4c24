"""Reduced-word arithmetic for free products of finite groups and free groups.

A free product is described by one Cayley table per factor (all factors of a
common finite order p, identity at index 0).  Every non-identity element has a
unique normal form: a sequence of non-identity factor letters in which no two
consecutive letters come from the same factor.  A free group of rank N uses
single-generator letters with a sign; a word is reduced when no letter is
followed by its inverse.  The length of a word is its letter count, and the
identity is the empty word of length 0.

Words are plain tuples of integer letter codes; all operations live on the
group spec, which owns the encoding:

* free product: letter (factor f, element e), 1 <= e < p, encodes to f*p + e;
* free group: letter (generator g, sign s) encodes to 2g+1 for s = -1 and
  2g+2 for s = +1 (so the inverse letter sorts first).

Enumeration is lexicographic on the code sequences, which coincides with
lexicographic order on (factor, element) pairs, resp. (generator, sign) pairs
with -1 < +1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, TypeAlias

Word: TypeAlias = "tuple[int, ...]"
Letter: TypeAlias = "tuple[int, int]"

IDENTITY: Word = ()

# Word lists longer than this are recomputed on demand instead of cached.
_WORD_CACHE_LIMIT = 400_000


class FactorTable:
    """A finite group of order p given by its Cayley table, identity at 0.

    The constructor only checks shape and index ranges so that defective
    tables can still be inspected; ``validate`` performs the full group-axiom
    check and returns a list of problems.
    """

    __slots__ = ("order", "table", "inverse")

    def __init__(self, table: Sequence[Sequence[int]], inverse: Sequence[int] | None = None):
        p = len(table)
        if p < 2:
            raise ValueError(f"factor order must be >= 2, got {p}")
        rows = []
        for i, row in enumerate(table):
            row = tuple(row)
            if len(row) != p:
                raise ValueError(f"row {i} has length {len(row)}, expected {p}")
            for v in row:
                if not isinstance(v, int) or not (0 <= v < p):
                    raise ValueError(f"row {i} contains out-of-range entry {v!r}")
            rows.append(row)
        self.order = p
        self.table = tuple(rows)
        if inverse is None:
            inverse = tuple(row.index(0) if 0 in row else i for i, row in enumerate(self.table))
        else:
            inverse = tuple(inverse)
            if len(inverse) != p or any(not (0 <= v < p) for v in inverse):
                raise ValueError("inverse array must list one in-range index per element")
        self.inverse = inverse

    @classmethod
    def cyclic(cls, p: int) -> "FactorTable":
        """The cyclic group Z_p with additive table mod p."""
        if p < 2:
            raise ValueError(f"cyclic order must be >= 2, got {p}")
        return cls(tuple(tuple((i + j) % p for j in range(p)) for i in range(p)))

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self.inverse[i]

    def validate(self) -> list[str]:
        """Return all group-axiom violations (empty list when genuine)."""
        p = self.order
        problems: list[str] = []
        full = set(range(p))
        if self.table[0] != tuple(range(p)):
            problems.append("row 0 is not the identity row (table[0][j] != j)")
        if any(self.table[i][0] != i for i in range(p)):
            problems.append("column 0 is not the identity column (table[i][0] != i)")
        for i in range(p):
            if set(self.table[i]) != full:
                problems.append(f"row {i} is not a permutation")
        for j in range(p):
            if {self.table[i][j] for i in range(p)} != full:
                problems.append(f"column {j} is not a permutation")
        t = self.table
        for a in range(p):
            for b in range(p):
                ab = t[a][b]
                for c in range(p):
                    if t[ab][c] != t[a][t[b][c]]:
                        problems.append(f"associativity fails at ({a},{b},{c})")
                        break
                else:
                    continue
                break
            else:
                continue
            break
        for i in range(p):
            j = self.inverse[i]
            if t[i][j] != 0 or t[j][i] != 0:
                problems.append(f"inverse[{i}]={j} is not a two-sided inverse")
        return problems

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FactorTable)
            and self.table == other.table
            and self.inverse == other.inverse
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"FactorTable(order={self.order})"


@dataclass
class FactorCheck:
    index: int
    order: int
    valid: bool
    problems: list[str] = field(default_factory=list)


@dataclass
class ValidationReport:
    """Outcome of checking a spec: hard table problems plus advisory flags.

    ``advisories`` records hypotheses that some identities assume (``m>=3``,
    ``m>=p``); a False flag is informational, never an error.
    """

    kind: str
    valid: bool
    factors: list[FactorCheck] = field(default_factory=list)
    advisories: dict[str, bool] = field(default_factory=dict)

    def problem_lines(self) -> list[str]:
        lines = []
        for fc in self.factors:
            for msg in fc.problems:
                lines.append(f"factor {fc.index}: {msg}")
        return lines


class GroupSpec:
    """Shared machinery for both group variants.

    Subclasses set up the letter tables (``_letters``, ``_allowed``,
    ``_inv_letter``) and implement ``multiply``/``_junction`` plus the letter
    encoding.  Words are tuples of letter codes and are only meaningful
    relative to the spec that produced them.
    """

    is_free_group = False
    label: str

    _letters: tuple[int, ...]
    _allowed: dict[int, tuple[int, ...]]
    _inv_letter: tuple[int, ...]

    def __init__(self) -> None:
        self._word_cache: dict[int, tuple[Word, ...]] = {}

    # -- parameters ------------------------------------------------------

    @property
    def m_effective(self) -> int:
        raise NotImplementedError

    @property
    def p_effective(self) -> int:
        raise NotImplementedError

    def recurrence_coefficients(self) -> tuple[int, int]:
        """Coefficients (p-2, (m-1)(p-1)) used by the length recurrences."""
        m, p = self.m_effective, self.p_effective
        return p - 2, (m - 1) * (p - 1)

    # -- counting and enumeration ----------------------------------------

    def word_count(self, n: int) -> int:
        """Number of reduced words of length n: m(p-1)[(m-1)(p-1)]^(n-1)."""
        if n < 0:
            raise ValueError(f"length must be >= 0, got {n}")
        if n == 0:
            return 1
        m, p = self.m_effective, self.p_effective
        return m * (p - 1) * ((m - 1) * (p - 1)) ** (n - 1)

    def enumerate_words(self, n: int) -> tuple[Word, ...]:
        """All reduced words of length n, lexicographic on letter codes."""
        if n < 0:
            raise ValueError(f"length must be >= 0, got {n}")
        cached = self._word_cache.get(n)
        if cached is not None:
            return cached
        if n == 0:
            words: tuple[Word, ...] = (IDENTITY,)
        elif n == 1:
            words = tuple((c,) for c in self._letters)
        else:
            allowed = self._allowed
            words = tuple(w + (c,) for w in self.enumerate_words(n - 1) for c in allowed[w[-1]])
        if len(words) <= _WORD_CACHE_LIMIT:
            self._word_cache[n] = words
        return words

    # -- word arithmetic ---------------------------------------------------

    def _junction(self, a: int, b: int) -> int | None:
        """Interaction of adjacent letters: None (reduced), 0 (cancel), or a
        merged letter code."""
        raise NotImplementedError

    def multiply(self, x: Word, y: Word) -> Word:
        """Product of two reduced words, again in reduced form."""
        i = len(x)
        j = 0
        ny = len(y)
        while i and j < ny:
            r = self._junction(x[i - 1], y[j])
            if r is None:
                break
            i -= 1
            j += 1
            if r:
                return x[:i] + (r,) + y[j:]
        return x[:i] + y[j:]

    def inverse(self, x: Word) -> Word:
        inv = self._inv_letter
        return tuple(inv[c] for c in reversed(x))

    def reduce(self, letters: Iterable[Letter]) -> Word:
        """Reduce a raw letter sequence to its normal form.

        Identity letters (element index 0) are dropped; adjacent same-factor
        letters are merged through the Cayley table; inverse pairs cancel.
        Raises ValueError on out-of-range letters.
        """
        stack: list[int] = []
        for pair in letters:
            code = self.encode_letter(pair)
            if code == 0:
                continue
            if stack:
                r = self._junction(stack[-1], code)
                if r is None:
                    stack.append(code)
                elif r == 0:
                    stack.pop()
                else:
                    stack[-1] = r
            else:
                stack.append(code)
        return tuple(stack)

    def concat_is_reduced(self, x: Word, y: Word) -> bool:
        """True when x followed by y is already a reduced word (no junction
        cancellation or merge), so the product has length |x|+|y|."""
        if not x or not y:
            return True
        return self._junction(x[-1], y[0]) is None

    # -- letter encoding ---------------------------------------------------

    def encode_letter(self, pair: Letter) -> int:
        """Code for an input letter; 0 encodes an identity letter."""
        raise NotImplementedError

    def decode_letter(self, code: int) -> Letter:
        raise NotImplementedError

    def letters_of(self, w: Word) -> tuple[Letter, ...]:
        return tuple(self.decode_letter(c) for c in w)

    def word(self, letters: Iterable[Letter]) -> Word:
        """Alias for ``reduce``: the canonical constructor from letter pairs."""
        return self.reduce(letters)

    def check_word(self, w: Word) -> Word:
        """Validate that w is a reduced word over this spec; return it."""
        for c in w:
            self.decode_letter(c)
        for a, b in zip(w, w[1:]):
            if self._junction(a, b) is not None:
                raise ValueError(f"word {w!r} is not reduced at pair ({a},{b})")
        return w

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.label})"


class FreeProductSpec(GroupSpec):
    """Free product of m >= 2 finite factors of a common order p."""

    is_free_group = False

    def __init__(self, factors: Sequence[FactorTable], label: str | None = None):
        super().__init__()
        factors = tuple(factors)
        if len(factors) < 2:
            raise ValueError(f"free product needs at least 2 factors, got {len(factors)}")
        orders = {f.order for f in factors}
        if len(orders) != 1:
            raise ValueError(f"all factors must share one order, got orders {sorted(orders)}")
        self.factors = factors
        self.m = len(factors)
        self.p = factors[0].order
        self.label = label or f"free_product:m={self.m},p={self.p}"
        p = self.p
        self._letters = tuple(f * p + e for f in range(self.m) for e in range(1, p))
        self._factor_of = tuple(c // p for c in range(self.m * p))
        inv = [0] * (self.m * p)
        for f, ft in enumerate(factors):
            for e in range(1, p):
                inv[f * p + e] = f * p + ft.inverse[e]
        self._inv_letter = tuple(inv)
        # merge[a][b]: product of two same-factor letter codes, 0 = identity
        merge: list[tuple[int, ...]] = []
        for a in range(self.m * p):
            f, ea = divmod(a, p)
            row = [0] * (self.m * p)
            if ea:
                ft = factors[f]
                for eb in range(1, p):
                    r = ft.table[ea][eb]
                    row[f * p + eb] = f * p + r if r else 0
            merge.append(tuple(row))
        self._merge = tuple(merge)
        self._allowed = {
            c: tuple(d for d in self._letters if d // p != c // p) for c in self._letters
        }

    @property
    def m_effective(self) -> int:
        return self.m

    @property
    def p_effective(self) -> int:
        return self.p

    def _junction(self, a: int, b: int) -> int | None:
        if self._factor_of[a] != self._factor_of[b]:
            return None
        return self._merge[a][b]

    def multiply(self, x: Word, y: Word) -> Word:
        fac = self._factor_of
        merge = self._merge
        i = len(x)
        j = 0
        ny = len(y)
        while i and j < ny:
            a = x[i - 1]
            b = y[j]
            if fac[a] != fac[b]:
                break
            c = merge[a][b]
            i -= 1
            j += 1
            if c:
                return x[:i] + (c,) + y[j:]
        return x[:i] + y[j:]

    def encode_letter(self, pair: Letter) -> int:
        f, e = pair
        if not (isinstance(f, int) and isinstance(e, int)):
            raise ValueError(f"letter {pair!r} must be a pair of integers")
        if not (0 <= f < self.m):
            raise ValueError(f"factor index {f} out of range 0..{self.m - 1}")
        if not (0 <= e < self.p):
            raise ValueError(f"element index {e} out of range 0..{self.p - 1}")
        if e == 0:
            return 0
        return f * self.p + e

    def decode_letter(self, code: int) -> Letter:
        f, e = divmod(code, self.p)
        if not (0 <= f < self.m) or e == 0:
            raise ValueError(f"invalid letter code {code}")
        return (f, e)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FreeProductSpec) and self.factors == other.factors

    __hash__ = None  # type: ignore[assignment]


class FreeGroupSpec(GroupSpec):
    """Free group on N >= 2 generators; letters are signed generators."""

    is_free_group = True

    def __init__(self, rank: int, label: str | None = None):
        super().__init__()
        if rank < 2:
            raise ValueError(f"free group rank must be >= 2, got {rank}")
        self.rank = rank
        self.label = label or f"free_group:N={rank}"
        self._letters = tuple(range(1, 2 * rank + 1))
        inv = [0] * (2 * rank + 1)
        for g in range(rank):
            inv[2 * g + 1] = 2 * g + 2
            inv[2 * g + 2] = 2 * g + 1
        self._inv_letter = tuple(inv)
        self._allowed = {
            c: tuple(d for d in self._letters if d != self._inv_letter[c]) for c in self._letters
        }

    @property
    def m_effective(self) -> int:
        return 2 * self.rank

    @property
    def p_effective(self) -> int:
        return 2

    def _junction(self, a: int, b: int) -> int | None:
        return 0 if b == self._inv_letter[a] else None

    def multiply(self, x: Word, y: Word) -> Word:
        inv = self._inv_letter
        i = len(x)
        j = 0
        ny = len(y)
        while i and j < ny and y[j] == inv[x[i - 1]]:
            i -= 1
            j += 1
        return x[:i] + y[j:]

    def encode_letter(self, pair: Letter) -> int:
        g, s = pair
        if not (isinstance(g, int) and isinstance(s, int)):
            raise ValueError(f"letter {pair!r} must be a pair of integers")
        if not (0 <= g < self.rank):
            raise ValueError(f"generator index {g} out of range 0..{self.rank - 1}")
        if s == 1:
            return 2 * g + 2
        if s == -1:
            return 2 * g + 1
        raise ValueError(f"generator sign must be +1 or -1, got {s}")

    def decode_letter(self, code: int) -> Letter:
        if not (1 <= code <= 2 * self.rank):
            raise ValueError(f"invalid letter code {code}")
        g, r = divmod(code - 1, 2)
        return (g, 1 if r else -1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FreeGroupSpec) and self.rank == other.rank

    __hash__ = None  # type: ignore[assignment]


def validate_spec(spec: GroupSpec) -> ValidationReport:
    """Check every factor table and report the hypothesis flags.

    Table defects (non-permutation rows, broken associativity, inconsistent
    inverses) make the report invalid; the ``m>=3`` and ``m>=p`` flags are
    advisory only.
    """
    if isinstance(spec, FreeGroupSpec):
        return ValidationReport(
            kind="free_group", valid=True, advisories={"rank>=2": spec.rank >= 2}
        )
    assert isinstance(spec, FreeProductSpec)
    checks = []
    for i, ft in enumerate(spec.factors):
        problems = ft.validate()
        checks.append(FactorCheck(index=i, order=ft.order, valid=not problems, problems=problems))
    return ValidationReport(
        kind="free_product",
        valid=all(c.valid for c in checks),
        factors=checks,
        advisories={"m>=3": spec.m >= 3, "m>=p": spec.m >= spec.p},
    )
