"""Serialization: spec files, word syntax, and rational rendering.

Group-spec sources
    fp:MxP          free product of M cyclic factors of order P
    free:N          free group of rank N
    <path>.json     {"variant": "free_product", "factors": [FACTOR, ...]}
                    where FACTOR is {"order": p, "table": [[...]], "inverse"?}
                    or the shorthand string "cyclic:p";
                    {"variant": "free_group", "rank": N}

Word syntax (accepted by every word-valued CLI flag)
    JSON pairs      [[factor, element], ...]  (free group: [generator, sign])
    compact         free product: one letter per factor a, b, c, ... with an
                    optional element index, e.g. "ab2c" = (0,1)(1,2)(2,1);
                    free group: lowercase generator, uppercase inverse,
                    e.g. "aBa"; the bare string "e" is the identity.
    tuples          a JSON list of words, or compact words joined by commas.

Rationals render as [num, den] pairs in JSON and "num/den" in CSV cells
(plain "num" when the denominator is 1).
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .algebra import AlgebraElement, Coeff, RadialVector, TensorElement
from .groups import FactorTable, FreeGroupSpec, FreeProductSpec, GroupSpec, Word

_NAMED_FP = re.compile(r"^fp:(\d+)x(\d+)$")
_NAMED_FREE = re.compile(r"^free:(\d+)$")
_CYCLIC = re.compile(r"^cyclic:(\d+)$")
_COMPACT_TOKEN = re.compile(r"([a-zA-Z])(\d*)")


def spec_from_name(name: str) -> GroupSpec | None:
    """Build a spec from a built-in shorthand, or None if not one."""
    m = _NAMED_FP.match(name)
    if m:
        count, order = int(m.group(1)), int(m.group(2))
        return FreeProductSpec(
            [FactorTable.cyclic(order) for _ in range(count)], label=name
        )
    m = _NAMED_FREE.match(name)
    if m:
        return FreeGroupSpec(int(m.group(1)), label=name)
    return None


def spec_from_dict(data: dict) -> GroupSpec:
    variant = data.get("variant")
    if variant == "free_group":
        rank = data.get("rank")
        if not isinstance(rank, int):
            raise ValueError("free_group spec needs an integer 'rank'")
        return FreeGroupSpec(rank)
    if variant == "free_product":
        raw_factors = data.get("factors")
        if not isinstance(raw_factors, list) or not raw_factors:
            raise ValueError("free_product spec needs a non-empty 'factors' list")
        factors = []
        for i, entry in enumerate(raw_factors):
            if isinstance(entry, str):
                m = _CYCLIC.match(entry)
                if not m:
                    raise ValueError(f"factor {i}: unknown shorthand {entry!r}")
                factors.append(FactorTable.cyclic(int(m.group(1))))
            elif isinstance(entry, dict):
                table = entry.get("table")
                if table is None:
                    raise ValueError(f"factor {i}: missing 'table'")
                ft = FactorTable(table, entry.get("inverse"))
                declared = entry.get("order")
                if declared is not None and declared != ft.order:
                    raise ValueError(
                        f"factor {i}: declared order {declared} != table size {ft.order}"
                    )
                factors.append(ft)
            else:
                raise ValueError(f"factor {i}: expected table object or 'cyclic:p'")
        return FreeProductSpec(factors)
    raise ValueError(f"unknown spec variant {variant!r}")


def load_group_spec(source: str) -> GroupSpec:
    """Resolve a shorthand name or read a spec file."""
    named = spec_from_name(source)
    if named is not None:
        return named
    try:
        with open(source) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read spec {source!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"spec file {source!r} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ValueError(f"spec file {source!r} must contain a JSON object")
    return spec_from_dict(data)


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------


def word_to_pairs(spec: GroupSpec, w: Word) -> list[list[int]]:
    return [list(pair) for pair in spec.letters_of(w)]


def word_to_json(spec: GroupSpec, w: Word) -> str:
    return json.dumps(word_to_pairs(spec, w), separators=(",", ":"))


def word_to_compact(spec: GroupSpec, w: Word) -> str:
    if not w:
        return "e"
    parts = []
    for first, second in spec.letters_of(w):
        if spec.is_free_group:
            ch = chr(ord("a") + first)
            parts.append(ch.upper() if second == -1 else ch)
        else:
            parts.append(chr(ord("a") + first) + ("" if second == 1 else str(second)))
    return "".join(parts)


def _parse_compact_word(spec: GroupSpec, text: str) -> Word:
    if text in ("", "e"):
        return ()
    pos = 0
    pairs = []
    while pos < len(text):
        m = _COMPACT_TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse word {text!r} at position {pos}")
        ch, digits = m.group(1), m.group(2)
        if spec.is_free_group:
            if digits:
                raise ValueError(f"free-group letters take no index: {text!r}")
            pairs.append((ord(ch.lower()) - ord("a"), -1 if ch.isupper() else 1))
        else:
            if not ch.islower():
                raise ValueError(f"free-product letters are lowercase: {text!r}")
            pairs.append((ord(ch) - ord("a"), int(digits) if digits else 1))
        pos = m.end()
    return spec.reduce(pairs)


def _looks_like_pair(item: Any) -> bool:
    return (
        isinstance(item, list)
        and len(item) == 2
        and all(isinstance(v, int) for v in item)
    )


def _word_from_json(spec: GroupSpec, data: Any) -> Word:
    if not isinstance(data, list) or not all(_looks_like_pair(p) for p in data):
        raise ValueError(f"not a word serialization: {data!r}")
    return spec.reduce(tuple(p) for p in data)


def parse_word(spec: GroupSpec, text: str) -> Word:
    """One word from JSON pairs or compact syntax (reduced on input)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        return _parse_compact_word(spec, text)
    if isinstance(data, list):
        return _word_from_json(spec, data)
    raise ValueError(f"cannot interpret {text!r} as a word")


def parse_word_tuple(spec: GroupSpec, text: str, k: int | None) -> tuple[Word, ...]:
    """A tuple of words; a single word broadcasts to a constant k-tuple.

    With k=None no broadcasting happens: a single word yields a 1-tuple and
    an explicit tuple keeps its own length.
    """
    broadcast = 1 if k is None else k
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        parts = [part.strip() for part in text.split(",")]
        if len(parts) == 1:
            return (_parse_compact_word(spec, parts[0]),) * broadcast
        words = [_parse_compact_word(spec, part) for part in parts]
    else:
        if not isinstance(data, list):
            raise ValueError(f"cannot interpret {text!r} as a word tuple")
        if not data:  # [] is the identity word
            return ((),) * broadcast
        if all(_looks_like_pair(p) for p in data):
            return (_word_from_json(spec, data),) * broadcast
        words = [_word_from_json(spec, entry) for entry in data]
    if k is not None and len(words) != k:
        raise ValueError(f"expected {k} components, got {len(words)} in {text!r}")
    return tuple(words)


# ---------------------------------------------------------------------------
# Rational and element rendering
# ---------------------------------------------------------------------------


def rational_pair(c: Coeff) -> list[int]:
    f = Fraction(c)
    return [f.numerator, f.denominator]


def rational_str(c: Coeff) -> str:
    f = Fraction(c)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def algebra_element_to_jsonable(x: AlgebraElement) -> list[dict]:
    out = []
    for w in x.support():
        f = Fraction(x.coeffs[w])
        out.append(
            {"word": word_to_pairs(x.spec, w), "num": f.numerator, "den": f.denominator}
        )
    return out


def tensor_element_to_jsonable(x: TensorElement) -> list[dict]:
    out = []
    for key in x.support():
        f = Fraction(x.coeffs[key])
        out.append(
            {
                "words": [word_to_pairs(x.spec, w) for w in key],
                "num": f.numerator,
                "den": f.denominator,
            }
        )
    return out


def radial_vector_to_jsonable(r: RadialVector) -> dict[str, list[int]]:
    return {str(n): rational_pair(r.coeffs[n]) for n in r.support()}
