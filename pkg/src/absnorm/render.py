"""Static SVG 1.1 pictures of positive spheres, duals, faces and slices."""
from __future__ import annotations

from xml.sax.saxutils import escape

from .classify import F_KIND, classify_norm, face_points, hat_values
from .errors import ContractError
from .norm_core import AbsNorm2, BlackBoxNorm, as_polygonal, dual_norm, fmt_scalar, slice_positive

SCALE = 400
MARGIN = 40
SIZE = SCALE + 2 * MARGIN


def _xy(p) -> tuple:
    """Plane point -> pixel coordinates (y grows downwards)."""
    return MARGIN + float(p[0]) * SCALE, MARGIN + (1 - float(p[1])) * SCALE


def _pts(points) -> str:
    return " ".join("%.3f,%.3f" % _xy(p) for p in points)


def _label(p, text: str, dx: int = 6, dy: int = -6, cls: str = "label") -> str:
    x, y = _xy(p)
    return f'<text class="{cls}" x="{x + dx:.3f}" y="{y + dy:.3f}">{escape(text)}</text>'


def render_svg(F: AbsNorm2, *, dual: bool = False, face: bool = False, hats: bool = False,
               slice_: tuple | None = None) -> str:
    """SVG document for S_F^+ with the requested overlays.

    ``slice_`` is ``(f, eps)``.  Overlays that do not apply to F produce a
    warning line in the picture instead of an error.
    """
    P = as_polygonal(F)
    tag = classify_norm(F)
    warnings = []
    body = []
    o, e1, e2 = _xy((0, 0)), _xy((1, 0)), _xy((0, 1))
    body.append(f'<line class="axis" x1="{o[0]:.3f}" y1="{o[1]:.3f}" x2="{e1[0] + 20:.3f}" y2="{e1[1]:.3f}"/>')
    body.append(f'<line class="axis" x1="{o[0]:.3f}" y1="{o[1]:.3f}" x2="{e2[0]:.3f}" y2="{e2[1] - 20:.3f}"/>')
    body.append(f'<polyline class="box" points="{_pts([(1, 0), (1, 1), (0, 1)])}"/>')

    if slice_ is not None:
        f, eps = slice_
        try:
            region = slice_positive(F, f, eps)
        except ContractError as exc:
            warnings.append(f"slice overlay skipped: {exc}")
        else:
            if region.empty:
                warnings.append("slice overlay: region is empty")
            else:
                body.append(f'<polygon class="slice" points="{_pts(region.vertices)}"/>')
                level = region.level
                edge = [v for v in region.vertices if region.functional.pair(v) == level]
                if len(edge) == 2:
                    body.append(f'<polyline class="slice-open" points="{_pts(edge)}"/>')

    if dual:
        body.append(f'<polyline class="dual" points="{_pts(dual_norm(P).vertices)}"/>')

    body.append(f'<polyline class="sphere" points="{_pts(P.vertices)}"/>')
    for v in P.vertices:
        x, y = _xy(v)
        body.append(f'<circle class="vertex" cx="{x:.3f}" cy="{y:.3f}" r="3"/>')

    if face:
        if tag.kind == F_KIND and (tag.m, tag.n) in ((2, 2), (2, 3)):
            c1, c2 = face_points(P)
            body.append(f'<polyline class="face" points="{_pts([c1, c2])}"/>')
            body.append(_label(c1, "c1"))
            body.append(_label(c2, "c2"))
        else:
            warnings.append(f"face overlay applies to F_{{2,2}} and F_{{2,3}} only; {tag.name} given")

    if hats:
        h1, h2 = hat_values(P)
        for p, name, h in (((1, h1), "hat1", h1), ((h2, 1), "hat2", h2)):
            x, y = _xy(p)
            body.append(f'<rect class="hat" x="{x - 4:.3f}" y="{y - 4:.3f}" width="8" height="8"/>')
            body.append(_label(p, f"{name}={fmt_scalar(h)}", dx=8, dy=14))

    title = f"{tag.name}, {tag.edges} edges"
    if isinstance(F, BlackBoxNorm):
        title += " (inscribed polygon)"
    body.append(f'<text class="title" x="{MARGIN}" y="{MARGIN - 16}">{escape(title)}</text>')
    for k, w in enumerate(warnings):
        body.append(f'<text class="warning" x="{MARGIN}" y="{SIZE - 12 - 16 * k}">{escape(w)}</text>')

    style = (
        ".axis{stroke:#000;stroke-width:1}"
        ".box{fill:none;stroke:#bbb;stroke-dasharray:4 4}"
        ".sphere{fill:none;stroke:#1f4e9c;stroke-width:2.5}"
        ".vertex{fill:#1f4e9c}"
        ".dual{fill:none;stroke:#c0392b;stroke-width:1.5;stroke-dasharray:6 3}"
        ".face{fill:none;stroke:#e67e22;stroke-width:6;stroke-opacity:0.7}"
        ".hat{fill:#27ae60}"
        ".slice{fill:#9b59b6;fill-opacity:0.25;stroke:#9b59b6;stroke-width:1}"
        ".slice-open{fill:none;stroke:#9b59b6;stroke-width:1.5;stroke-dasharray:2 3}"
        "text{font-family:sans-serif;font-size:12px}"
        ".warning{fill:#b03a2e}"
    )
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">\n'
        f"<style>{style}</style>\n"
        + "\n".join(body)
        + "\n</svg>\n"
    )
