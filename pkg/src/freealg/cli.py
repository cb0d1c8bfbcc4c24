"""Command-line front end.

Subcommands: enumerate, verify, defects, conjugacy, nonzero-check, k0-check.
Every command takes --spec (a shorthand like fp:3x2 / free:2 or a JSON spec
file), --format {text,csv,json} and --out (stdout when omitted; a relative
path is placed under $FREEALG_OUT_DIR when that is set).

Exit codes: 0 all asserted identities hold, 1 an asserted identity failed,
2 input or configuration error.  Output is deterministic: the same command
line produces byte-identical bytes on every run.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from .algebra import build_radial, verify_recurrence_w1_wn, verify_w1_squared
from .conjugacy import MODE_PLAIN, MODE_REDUCED, EquationInstance, verify_uniqueness
from .expectation import (
    TensorElement,
    defect_series,
    expect,
    k_reduction_check,
    nonzero_criterion,
)
from .groups import validate_spec
from .io import (
    load_group_spec,
    parse_word,
    parse_word_tuple,
    radial_vector_to_jsonable,
    rational_pair,
    rational_str,
    word_to_compact,
    word_to_json,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
OUT_DIR_ENV = "FREEALG_OUT_DIR"


def _dec(value) -> str:
    """Deterministic decimal rendering for the text format."""
    return format(float(Fraction(value)), ".10g")


# ---------------------------------------------------------------------------
# Commands: each returns (exit_code, document); a document carries the three
# renderings (json payload, csv header+rows, text lines).
# ---------------------------------------------------------------------------


def run_enumerate(spec, args):
    n = args.n
    if n < 0:
        raise ValueError(f"--n must be >= 0, got {n}")
    if n > args.max_n:
        raise ValueError(
            f"--n {n} exceeds the default cap {args.max_n}; raise --max-n to allow it"
        )
    words = spec.enumerate_words(n)
    formula = spec.word_count(n)
    matches = len(words) == formula
    doc = {
        "json": {
            "command": "enumerate",
            "spec": spec.label,
            "n": n,
            "count": len(words),
            "count_formula": formula,
            "count_matches": matches,
            "words": [[list(p) for p in spec.letters_of(w)] for w in words],
        },
        "csv_header": ["index", "length", "word"],
        "csv_rows": [[str(i), str(len(w)), word_to_json(spec, w)] for i, w in enumerate(words)],
        "text_lines": [
            f"reduced words of length {n} over {spec.label}",
            *(f"{i:>6}  {word_to_compact(spec, w)}" for i, w in enumerate(words)),
            f"count: {len(words)}  formula: {formula}  match: {'yes' if matches else 'NO'}",
        ],
    }
    return (EXIT_OK if matches else EXIT_FAIL), doc


def run_verify(spec, args):
    k, n_max = args.k, args.n_max
    if k < 1:
        raise ValueError(f"--k must be >= 1, got {k}")
    if n_max < 2:
        raise ValueError(f"--n-max must be >= 2, got {n_max}")
    recurrence = verify_recurrence_w1_wn(spec, k, n_max)
    residual_by_n = {row.n: row for row in recurrence.rows}
    norms = {n: build_radial(spec, k, n).norm_sq() for n in range(n_max + 1)}
    norms_ok = all(norms[n] == spec.word_count(n) for n in range(n_max + 1))
    radials = {n: build_radial(spec, k, n) for n in range(n_max + 1)}
    orth_pairs = [
        (n, m) for n in range(n_max + 1) for m in range(n + 1, n_max + 1)
    ]
    orth_ok = all(radials[n].inner(radials[m]) == 0 for n, m in orth_pairs)
    square = verify_w1_squared(spec, k)
    all_passed = recurrence.all_zero() and norms_ok and orth_ok

    if square.matches_plus_form and not square.matches_minus_form:
        verdict = "plus-sign form matches; minus-sign form does not"
    elif square.matches_minus_form and not square.matches_plus_form:
        verdict = "minus-sign form matches; plus-sign form does not"
    elif square.matches_plus_form:
        verdict = "both sign forms match"
    else:
        verdict = "neither sign form matches"

    csv_rows = []
    for n in range(n_max + 1):
        row = residual_by_n.get(n)
        csv_rows.append(
            [str(n), rational_str(norms[n]), rational_str(row.residual_norm_sq) if row else ""]
        )
    alpha, beta = spec.recurrence_coefficients()
    doc = {
        "json": {
            "command": "verify",
            "spec": spec.label,
            "k": k,
            "n_max": n_max,
            "recurrence_coefficients": {"middle": alpha, "lower": beta},
            "rows": [
                {
                    "n": row.n,
                    "word_count": row.word_count,
                    "norm_sq": rational_pair(row.norm_sq),
                    "residual_norm_sq": rational_pair(row.residual_norm_sq),
                    "commutes": row.commutes,
                }
                for row in recurrence.rows
            ],
            "norms_match_word_count": norms_ok,
            "orthogonality_ok": orth_ok,
            "orthogonality_pairs_checked": len(orth_pairs),
            "w1_squared": {
                "coefficients": {str(n): rational_pair(c) for n, c in sorted(square.coefficients.items())},
                "is_radial": square.is_radial,
                "matches_plus_form": square.matches_plus_form,
                "matches_minus_form": square.matches_minus_form,
                "verdict": verdict,
            },
            "all_passed": all_passed,
        },
        "csv_header": ["n", "norm_sq", "residual_norm_sq"],
        "csv_rows": csv_rows,
        "text_lines": [
            f"verification over {spec.label}, k={k}, n up to {n_max}",
            f"recurrence w1*wn = w(n+1) + {alpha}*wn + {beta}*w(n-1):",
            *(
                f"  n={row.n}: residual_norm_sq={rational_str(row.residual_norm_sq)}"
                f" commutes={'yes' if row.commutes else 'NO'}"
                for row in recurrence.rows
            ),
            f"norms match word counts: {'yes' if norms_ok else 'NO'}",
            f"orthogonality ({len(orth_pairs)} pairs): {'ok' if orth_ok else 'FAILED'}",
            f"w1^2 verdict: {verdict} "
            f"(plus form: w2 + {alpha}*w1 + {spec.m_effective * (spec.p_effective - 1)}*w0)",
            f"all asserted identities: {'pass' if all_passed else 'FAIL'}",
        ],
    }
    return (EXIT_OK if all_passed else EXIT_FAIL), doc


def run_defects(spec, args):
    k = args.k
    if k < 1:
        raise ValueError(f"--k must be >= 1, got {k}")
    if args.n_max < 1:
        raise ValueError(f"--n-max must be >= 1, got {args.n_max}")
    xs = parse_word_tuple(spec, args.x, k)
    ys = parse_word_tuple(spec, args.y, k)
    report = defect_series(spec, xs, ys, args.n_max)
    terms = report.normalized_terms()
    tail_from = report.n_max
    while tail_from > 0 and terms[tail_from - 1] >= terms[tail_from]:
        tail_from -= 1
    csv_rows = []
    for row in report.rows:
        dsq = Fraction(row.defect_sq)
        nt = Fraction(row.normalized_term)
        csv_rows.append(
            [
                str(row.n),
                str(row.solution_count),
                str(dsq.numerator),
                str(dsq.denominator),
                str(nt.numerator),
                str(nt.denominator),
                rational_str(row.partial_sum),
                rational_str(row.tail_bound) if row.tail_bound is not None else "",
            ]
        )
    doc = {
        "json": {
            "command": "defects",
            "spec": spec.label,
            "k": report.k,
            "x_tuple": [word_to_compact(spec, w) for w in report.x_tuple],
            "y_tuple": [word_to_compact(spec, w) for w in report.y_tuple],
            "n_max": report.n_max,
            "n0": report.n0,
            "constant_x": report.constant_x,
            "constant_y": report.constant_y,
            "k0_hypotheses_hold": report.k0_hypotheses,
            "rows": [
                {
                    "n": row.n,
                    "solution_count": row.solution_count,
                    "defect_sq": rational_pair(row.defect_sq),
                    "normalized_term": rational_pair(row.normalized_term),
                    "partial_sum": rational_pair(row.partial_sum),
                    "tail_bound": (
                        rational_pair(row.tail_bound) if row.tail_bound is not None else None
                    ),
                    "realized_lengths": list(row.realized_lengths),
                }
                for row in report.rows
            ],
            "normalized_terms_nonincreasing_from": tail_from,
        },
        "csv_header": [
            "n",
            "solution_count",
            "defect_sq_num",
            "defect_sq_den",
            "normalized_term_num",
            "normalized_term_den",
            "partial_sum",
            "tail_bound",
        ],
        "csv_rows": csv_rows,
        "text_lines": [
            f"defect series over {spec.label}, k={report.k}, "
            f"x={','.join(word_to_compact(spec, w) for w in report.x_tuple)} "
            f"y={','.join(word_to_compact(spec, w) for w in report.y_tuple)}",
            f"constant x: {'yes' if report.constant_x else 'no'}  "
            f"constant y: {'yes' if report.constant_y else 'no'}  "
            f"rank-reduction hypotheses: {'hold' if report.k0_hypotheses else 'do not hold'}  "
            f"n0={report.n0}",
            *(
                f"  n={row.n}: solutions={row.solution_count} "
                f"defect_sq={rational_str(row.defect_sq)} (~{_dec(row.defect_sq)}) "
                f"normalized={rational_str(row.normalized_term)} (~{_dec(row.normalized_term)}) "
                f"partial_sum={rational_str(row.partial_sum)} (~{_dec(row.partial_sum)})"
                + (
                    f" tail_bound={rational_str(row.tail_bound)}"
                    if row.tail_bound is not None
                    else ""
                )
                for row in report.rows
            ),
            f"normalized terms are nonincreasing from n={tail_from} onward",
        ],
    }
    return EXIT_OK, doc


def run_conjugacy(spec, args):
    mode = MODE_REDUCED if args.mode == "reduced-concat" else MODE_PLAIN
    a = parse_word(spec, args.a)
    b = parse_word(spec, args.b)
    if args.l_max < 1:
        raise ValueError(f"--l-max must be >= 1, got {args.l_max}")
    inst = EquationInstance(spec, a, b, mode)
    report = verify_uniqueness(inst, args.l_max)
    ok = report.ok()
    doc = {
        "json": {
            "command": "conjugacy",
            "spec": spec.label,
            "mode": mode,
            "a": word_to_compact(spec, a),
            "b": word_to_compact(spec, b),
            "l_max": args.l_max,
            "plain_uniqueness_bound": inst.plain_uniqueness_bound,
            "rows": [
                {
                    "l": row.l,
                    "count": row.count,
                    "asserted": row.asserted,
                    "violation": row.violation,
                    "solutions": [word_to_compact(spec, x) for x in row.solutions],
                }
                for row in report.rows
            ],
            "violations": sum(row.violation for row in report.rows),
            "all_passed": ok,
        },
        "csv_header": ["mode", "a", "b", "l", "count", "solutions"],
        "csv_rows": [
            [
                mode,
                word_to_json(spec, a),
                word_to_json(spec, b),
                str(row.l),
                str(row.count),
                ";".join(word_to_json(spec, x) for x in row.solutions),
            ]
            for row in report.rows
        ],
        "text_lines": [
            f"equation x*a = b*x over {spec.label}, mode={mode}, "
            f"a={word_to_compact(spec, a)}, b={word_to_compact(spec, b)}",
            *(
                f"  l={row.l}: count={row.count}"
                f" [{'asserted' if row.asserted else 'reported only'}]"
                + (" VIOLATION" if row.violation else "")
                + (
                    "  solutions: " + " ".join(word_to_compact(spec, x) for x in row.solutions)
                    if row.solutions
                    else ""
                )
                for row in report.rows
            ),
            f"uniqueness in asserted range: {'pass' if ok else 'FAIL'}",
        ],
    }
    return (EXIT_OK if ok else EXIT_FAIL), doc


def run_nonzero_check(spec, args):
    words = parse_word_tuple(spec, args.x, args.k)
    try:
        all_equal = nonzero_criterion(spec, words, cross_check=True)
    except RuntimeError as exc:
        return EXIT_FAIL, {
            "json": {"command": "nonzero-check", "error": str(exc)},
            "csv_header": ["error"],
            "csv_rows": [[str(exc)]],
            "text_lines": [f"CROSS-CHECK FAILED: {exc}"],
        }
    rv = expect(TensorElement.delta(spec, words))
    doc = {
        "json": {
            "command": "nonzero-check",
            "spec": spec.label,
            "k": len(words),
            "components": [word_to_compact(spec, w) for w in words],
            "all_equal": all_equal,
            "expectation_nonzero": bool(rv),
            "expectation": radial_vector_to_jsonable(rv),
            "cross_check": "agreed",
        },
        "csv_header": ["k", "all_equal", "expectation_nonzero", "expectation"],
        "csv_rows": [
            [
                str(len(words)),
                str(all_equal).lower(),
                str(bool(rv)).lower(),
                " ".join(f"{n}:{rational_str(c)}" for n, c in sorted(rv.coeffs.items())),
            ]
        ],
        "text_lines": [
            f"expectation of {' (x) '.join(word_to_compact(spec, w) for w in words)} "
            f"over {spec.label}",
            f"components all equal: {'yes' if all_equal else 'no'}",
            f"expectation nonzero: {'yes' if rv else 'no'}"
            + (
                "  coordinates: "
                + " ".join(f"w{n}*{rational_str(c)}" for n, c in sorted(rv.coeffs.items()))
                if rv
                else ""
            ),
            "definition cross-check: agreed",
        ],
    }
    return EXIT_OK, doc


def run_k0_check(spec, args):
    x = parse_word(spec, args.x)
    y = parse_word(spec, args.y)
    if args.k < 1:
        raise ValueError(f"--k must be >= 1, got {args.k}")
    start = len(x) + len(y)
    if args.exploratory:
        start = 0
    if not args.exploratory and (len(x) < 2 or len(y) < 2):
        raise ValueError(
            f"|x|={len(x)}, |y|={len(y)} violate the hypotheses |x|>=2, |y|>=2; "
            "pass --exploratory to compute anyway"
        )
    if args.n_max < start:
        raise ValueError(f"--n-max {args.n_max} is below the first degree {start}")
    results = [
        k_reduction_check(spec, x, y, args.k, n, exploratory=True)
        for n in range(start, args.n_max + 1)
    ]
    failed = [r for r in results if r.in_hypothesis and not r.equal]
    doc = {
        "json": {
            "command": "k0-check",
            "spec": spec.label,
            "x": word_to_compact(spec, x),
            "y": word_to_compact(spec, y),
            "k": args.k,
            "rows": [
                {
                    "n": r.n,
                    "in_hypothesis": r.in_hypothesis,
                    "rank_k_value": rational_pair(r.rank_k_value),
                    "rank_1_value": rational_pair(r.rank_1_value),
                    "equal": r.equal,
                }
                for r in results
            ],
            "all_passed": not failed,
        },
        "csv_header": [
            "n",
            "in_hypothesis",
            "rank_k_num",
            "rank_k_den",
            "rank_1_num",
            "rank_1_den",
            "equal",
        ],
        "csv_rows": [
            [
                str(r.n),
                str(r.in_hypothesis).lower(),
                str(Fraction(r.rank_k_value).numerator),
                str(Fraction(r.rank_k_value).denominator),
                str(Fraction(r.rank_1_value).numerator),
                str(Fraction(r.rank_1_value).denominator),
                str(r.equal).lower(),
            ]
            for r in results
        ],
        "text_lines": [
            f"rank-reduction check over {spec.label}: x={word_to_compact(spec, x)}, "
            f"y={word_to_compact(spec, y)}, k={args.k}",
            *(
                f"  n={r.n}: rank-{args.k} {rational_str(r.rank_k_value)} "
                f"vs rank-1 {rational_str(r.rank_1_value)} -> "
                f"{'equal' if r.equal else 'DIFFER'}"
                + ("" if r.in_hypothesis else " (outside hypotheses, reported only)")
                for r in results
            ),
            f"equality in hypothesis range: {'pass' if not failed else 'FAIL'}",
        ],
    }
    return (EXIT_OK if not failed else EXIT_FAIL), doc


# ---------------------------------------------------------------------------
# Rendering and entry point
# ---------------------------------------------------------------------------


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc["json"], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(doc["csv_header"])
        writer.writerows(doc["csv_rows"])
        return buf.getvalue()
    return "\n".join(doc["text_lines"]) + "\n"


def _resolve_out(path: str) -> str:
    base = os.environ.get(OUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _write(content: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(content)
        return
    with open(_resolve_out(out), "w", newline="") as fh:
        fh.write(content)


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--spec", required=True, help="fp:MxP, free:N, or a JSON spec file")
    sub.add_argument("--format", choices=("text", "csv", "json"), default="text")
    sub.add_argument("--out", default=None, help="output file ('-' or omitted: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freealg",
        description="Exact word and radial-subalgebra computations in free products "
        "of finite groups and free groups.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("enumerate", help="list all reduced words of one length")
    _add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-n", type=int, default=8, help="safety cap on --n (default 8)")
    p.set_defaults(run=run_enumerate)

    p = subs.add_parser("verify", help="recurrence, norm and orthogonality sweep")
    _add_common(p)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--n-max", type=int, default=5)
    p.set_defaults(run=run_verify)

    p = subs.add_parser("defects", help="defect series for word tuples")
    _add_common(p)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--x", required=True, help="word or k-tuple of words")
    p.add_argument("--y", required=True, help="word or k-tuple of words")
    p.add_argument("--n-max", type=int, default=8)
    p.set_defaults(run=run_defects)

    p = subs.add_parser("conjugacy", help="uniqueness sweep for x*a = b*x")
    _add_common(p)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--mode", choices=("plain", "reduced-concat"), default="reduced-concat")
    p.add_argument("--l-max", type=int, default=8)
    p.set_defaults(run=run_conjugacy)

    p = subs.add_parser("nonzero-check", help="expectation of an elementary tensor")
    _add_common(p)
    p.add_argument("--x", required=True, help="tuple of words")
    p.add_argument("--k", type=int, default=None, help="broadcast a single word to rank k")
    p.set_defaults(run=run_nonzero_check)

    p = subs.add_parser("k0-check", help="rank-k vs rank-1 defect equality")
    _add_common(p)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--exploratory", action="store_true", help="also compute outside the hypotheses")
    p.set_defaults(run=run_k0_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = load_group_spec(args.spec)
        report = validate_spec(spec)
        if not report.valid:
            problems = "; ".join(report.problem_lines())
            raise ValueError(f"spec {args.spec!r} is not a valid group spec: {problems}")
        code, doc = args.run(spec, args)
        _write(render(doc, args.format), args.out)
        return code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
