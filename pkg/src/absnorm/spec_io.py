"""Reading and writing norm-spec and operator-spec JSON files.

Norm specs:

    {"type": "polygon", "vertices": [["1", "0"], ["1", "1/2"], ["0", "1"]]}
    {"type": "lp", "p": "2"}
    {"type": "blackbox-samples", "theta_values": [r_0, ..., r_n]}

Polygon coordinates are exact rationals written as "p/q" strings.  The
``theta_values`` of a sample file are boundary radii at the angles
k*pi/(2n), k = 0..n.  Numeric types accept an optional integer
"resolution" (probe count of the inscribed polygon).
"""
from __future__ import annotations

import json
import math
from pathlib import Path

from .centers import CenterSpec, StepRankOne
from .errors import MalformedInputError
from .norm_core import (
    AbsNorm2,
    BlackBoxNorm,
    PolygonalNorm,
    fmt_scalar,
    lp_norm,
    polygon,
    samples_interpolator,
    to_fraction,
)


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _read_json(source):
    if isinstance(source, (dict, list)):
        return source
    text = Path(source).read_text() if not isinstance(source, str) or not source.lstrip().startswith("{") else source
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _field(data: dict, key: str, where: str = ""):
    if not isinstance(data, dict):
        raise MalformedInputError(f"{where or 'document'}: expected a JSON object")
    if key not in data:
        raise MalformedInputError(f"{where + '.' if where else ''}{key}: missing field")
    return data[key]


def _rational(value, where: str):
    if isinstance(value, float):
        raise MalformedInputError(f"{where}: floats are not allowed in polygon files, write \"p/q\"")
    try:
        return to_fraction(value)
    except (MalformedInputError, ValueError, ZeroDivisionError):
        raise MalformedInputError(f"{where}: cannot parse {value!r} as a rational") from None


def _resolution(data: dict) -> int:
    res = data.get("resolution", 256)
    if not isinstance(res, int) or res < 2:
        raise MalformedInputError(f"resolution: expected an integer >= 2, got {res!r}")
    return res


def norm_from_dict(data: dict) -> AbsNorm2:
    kind = _field(data, "type")
    if kind == "polygon":
        verts = _field(data, "vertices")
        if not isinstance(verts, list) or not verts:
            raise MalformedInputError("vertices: expected a non-empty list of [a1, a2] pairs")
        pts = []
        for i, v in enumerate(verts):
            if not isinstance(v, list) or len(v) != 2:
                raise MalformedInputError(f"vertices[{i}]: expected a pair")
            pts.append((_rational(v[0], f"vertices[{i}][0]"), _rational(v[1], f"vertices[{i}][1]")))
        return polygon(pts)
    if kind == "lp":
        raw = _field(data, "p")
        try:
            p = math.inf if str(raw).lower() in ("inf", "infinity") else float(to_fraction(raw))
        except (MalformedInputError, ValueError, ZeroDivisionError):
            raise MalformedInputError(f"p: cannot parse {raw!r}") from None
        return lp_norm(p, _resolution(data))
    if kind == "blackbox-samples":
        radii = _field(data, "theta_values")
        if not isinstance(radii, list):
            raise MalformedInputError("theta_values: expected a list of radii")
        try:
            vals = [float(to_fraction(r)) if isinstance(r, str) else float(r) for r in radii]
        except (MalformedInputError, ValueError, TypeError, ZeroDivisionError):
            raise MalformedInputError("theta_values: entries must be numbers") from None
        return BlackBoxNorm(samples_interpolator(vals), _resolution(data), "samples")
    raise MalformedInputError(f"type: unknown norm type {kind!r}")


def load_norm(source) -> AbsNorm2:
    """Parse a norm spec from a path, a JSON string or an already-decoded dict."""
    return norm_from_dict(_read_json(source))


def norm_to_dict(F: PolygonalNorm) -> dict:
    if not isinstance(F, PolygonalNorm):
        raise MalformedInputError("only polygonal norms have an exact file form")
    return {"type": "polygon", "vertices": [[fmt_scalar(x) for x in v] for v in F.vertices]}


def dump_norm(F: PolygonalNorm) -> str:
    return dumps(norm_to_dict(F))


def operator_from_dict(data: dict, F: AbsNorm2 | None) -> tuple:
    """(CenterSpec, StepRankOne, n_list, rho) from a defect-study spec.

    {"center": "identity" | "from_sum" | "into_sum",
     "functional": [[...m step values...], ...], "vector": [[...], ...],
     "n_list": [8, 16, ...], "m": 4, "rho": "3/4", "normalize": true}
    """
    center = _field(data, "center")
    if center not in ("identity", "from_sum", "into_sum"):
        raise MalformedInputError(f"center: unknown center {center!r}")
    if "norm" in data:
        F = norm_from_dict(data["norm"]) if isinstance(data["norm"], dict) else load_norm(data["norm"])

    def steps(key):
        parts = _field(data, key)
        if not isinstance(parts, list) or not parts or not all(isinstance(p, list) and p for p in parts):
            raise MalformedInputError(f"{key}: expected a list of step-value lists")
        return tuple(tuple(_rational(v, f"{key}[{i}][{j}]") for j, v in enumerate(p)) for i, p in enumerate(parts))

    phi, y = steps("functional"), steps("vector")
    widths = {len(p) for p in phi + y}
    if len(widths) != 1:
        raise MalformedInputError("functional/vector: all step lists need the same length")
    m = widths.pop()
    if "m" in data and data["m"] != m:
        raise MalformedInputError(f"m: declared {data['m']} but step lists have length {m}")
    n_list = _field(data, "n_list")
    if not isinstance(n_list, list) or not n_list or not all(isinstance(n, int) and n > 0 for n in n_list):
        raise MalformedInputError("n_list: expected a list of positive integers")
    if center != "identity" and F is None:
        raise MalformedInputError("center: this center needs a norm (--norm or a \"norm\" field)")
    rho = float(_rational(data.get("rho", "3/4"), "rho"))
    spec = CenterSpec(center, F if center != "identity" else None)
    return spec, StepRankOne(phi, y, bool(data.get("normalize", True))), n_list, rho
