"""Kernel JSON files and analysis reports.

Canonical form: UTF-8, keys sorted, two-space indent, LF newlines, trailing
newline.  Integers are bare JSON numbers; other rationals are ``"p/q"`` strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict

from . import _rational as rq
from .errors import FMCurveError
from .fm import pic_map, torelli_report
from .grr import KernelClass

KERNEL_KEYS = {"genus_source", "genus_target", "rank", "a", "b", "ch2", "gamma"}


class KernelFileError(FMCurveError):
    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


def _line_of(text: str, key: str) -> int | None:
    needle = json.dumps(key) + ":"
    for no, line in enumerate(text.splitlines(), start=1):
        if needle in line.replace('" :', '":'):
            return no
    return None


def encode_rational(x: Fraction):
    return x.numerator if x.denominator == 1 else rq.format_rational(x)


def _decode_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ValueError(f"{where}: expected an integer or a 'p/q' string, got {value!r}")
    try:
        return rq.frac(value)
    except ValueError as exc:
        raise ValueError(f"{where}: {exc}") from None


def kernel_to_dict(e: KernelClass) -> Dict[str, Any]:
    return {
        "genus_source": e.genus_source,
        "genus_target": e.genus_target,
        "rank": encode_rational(e.rank),
        "a": encode_rational(e.a),
        "b": encode_rational(e.b),
        "ch2": encode_rational(e.ch2),
        "gamma": [[encode_rational(v) for v in row] for row in e.gamma],
    }


def kernel_from_dict(data: Any, text: str = "") -> KernelClass:
    def fail(msg, key=None):
        raise KernelFileError(msg, _line_of(text, key) if key else None, key)

    if not isinstance(data, dict):
        fail("top level must be a JSON object")
    unknown = sorted(set(data) - KERNEL_KEYS)
    if unknown:
        fail(f"unknown key(s) {unknown}", unknown[0])
    genera = {}
    for key in ("genus_source", "genus_target"):
        if key not in data:
            fail("missing required field", key)
        value = data[key]
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            fail(f"genus must be a non-negative integer, got {value!r}", key)
        genera[key] = value
    scalars = {}
    for key in ("rank", "a", "b", "ch2"):
        if key not in data:
            fail("missing required field", key)
        try:
            scalars[key] = _decode_rational(data[key], key)
        except ValueError as exc:
            fail(str(exc), key)
    g, gt = genera["genus_source"], genera["genus_target"]
    gamma = data.get("gamma")
    if gamma is None:
        rows = None
    else:
        if not isinstance(gamma, list) or len(gamma) != 2 * g:
            fail(f"gamma must have {2 * g} rows", "gamma")
        rows = []
        for i, row in enumerate(gamma):
            if not isinstance(row, list) or len(row) != 2 * gt:
                fail(f"gamma row {i} must have {2 * gt} entries", "gamma")
            try:
                rows.append([_decode_rational(v, f"gamma[{i}][{j}]") for j, v in enumerate(row)])
            except ValueError as exc:
                fail(str(exc), "gamma")
    return KernelClass(g, gt, scalars["rank"], scalars["a"], scalars["b"], rows, scalars["ch2"])


def dumps_canonical(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def emit_kernel(e: KernelClass) -> str:
    return dumps_canonical(kernel_to_dict(e))


def parse_kernel_text(text: str) -> KernelClass:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise KernelFileError(f"malformed JSON: {exc.msg}", exc.lineno) from None
    return kernel_from_dict(data, text)


def parse_kernel_file(path) -> KernelClass:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise KernelFileError(f"cannot read {path}: {exc}") from None
    return parse_kernel_text(text)


def write_kernel_file(path, e: KernelClass) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(emit_kernel(e))


# -- reports ---------------------------------------------------------------------

def build_report(e: KernelClass) -> Dict[str, Any]:
    g1 = e.genus_source - 1
    pic = pic_map(e)
    report = torelli_report(e)
    return {
        "input": kernel_to_dict(e),
        "k_map": {
            "rank": {"r_f": encode_rational(e.a - g1 * e.rank), "d_f": encode_rational(e.rank)},
            "degree": {"r_f": encode_rational(e.ch2 - g1 * e.b), "d_f": encode_rational(e.b)},
        },
        "pic": {
            "slope_degree": encode_rational(pic.slope_degree),
            "translation_degree": encode_rational(pic.translation_degree),
        },
        "jac": [[encode_rational(v) for v in row] for row in pic.jac_linear.matrix],
        "flags": {
            "unimodular": report.jac_is_isomorphism,
            "preserves_polarization": report.jac_preserves_polarization,
            "numerical_equivalence": report.numerical_equivalence,
            "consistent": report.consistent,
        },
    }


def _linear_form(coeffs: Dict[str, Any]) -> str:
    terms = []
    for var in ("r_f", "d_f"):
        c = rq.frac(coeffs[var])
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else f"{rq.format_rational(abs(c))}*"
        sign = "-" if c < 0 else "+"
        terms.append((sign, f"{mag}{var}"))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, term in terms[1:]:
        out += f" {sign} {term}"
    return out


def _affine(pic: Dict[str, Any]) -> str:
    t = rq.frac(pic["translation_degree"])
    text = f"{pic['slope_degree']}*m"
    if t:
        text += f" {'-' if t < 0 else '+'} {rq.format_rational(abs(t))}"
    return text


def format_report(report: Dict[str, Any]) -> str:
    k = report["input"]
    lines = [
        f"kernel on C x C' with g = {k['genus_source']}, g' = {k['genus_target']}",
        f"  rank = {k['rank']}, a = {k['a']}, b = {k['b']}, ch2 = {k['ch2']}",
        "K-theory map (r_f, d_f) -> (rank', degree'):",
        f"  rank'   = {_linear_form(report['k_map']['rank'])}",
        f"  degree' = {_linear_form(report['k_map']['degree'])}",
        "Picard map:",
        f"  degree m -> {_affine(report['pic'])}",
        "Jacobian map:",
    ]
    jac = report["jac"]
    if jac and jac[0]:
        width = max(len(str(v)) for row in jac for v in row)
        lines += ["  [" + " ".join(str(v).rjust(width) for v in row) + "]" for row in jac]
    else:
        lines.append(f"  (empty {len(jac)}x0 matrix)" if jac else "  (empty matrix)")
    flags = report["flags"]
    lines += [
        f"unimodular isomorphism:      {str(flags['unimodular']).lower()}",
        f"preserves polarization:      {str(flags['preserves_polarization']).lower()}",
        f"numerical equivalence:       {str(flags['numerical_equivalence']).lower()}",
        f"torelli consistent:          {str(flags['consistent']).lower()}",
    ]
    return "\n".join(lines) + "\n"
