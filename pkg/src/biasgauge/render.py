"""SVG badges for an annotation document.

Layout and palette are fixed choices; what is guaranteed is that every
number drawn comes from a ``display`` string of the document and that the
same document always yields the same bytes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape, quoteattr

from .annotation import UNDEFINED_TOKEN, AnnotationDocument

FONT = "DejaVu Sans,Verdana,Geneva,sans-serif"
CHAR_W = 7
ROW_H = 22
CELL_W = 70

MAGNITUDE_COLORS = {
    "VERY SMALL": "#4c1",
    "SMALL": "#97ca00",
    "MEDIUM": "#dfb317",
    "LARGE": "#e05d44",
}
NOT_COMPUTABLE = "#9f9f9f"
BAR_COLOR = "#3572a5"
CELL_COLOR = "#3572a5"

HATCH_ID = "undefined-hatch"
HATCH_DEF = (
    f'<pattern id="{HATCH_ID}" patternUnits="userSpaceOnUse" width="6" height="6" '
    'patternTransform="rotate(45)">'
    '<rect width="6" height="6" fill="#fff"/>'
    '<line x1="0" y1="0" x2="0" y2="6" stroke="#b00" stroke-width="2"/></pattern>'
)


@dataclass(frozen=True)
class BadgeSet:
    dependence_badge: str
    diverseness_badge: str
    inclusiveness_badge: str
    likelihood_badge: str

    def items(self):
        return (
            ("dependence", self.dependence_badge),
            ("diverseness", self.diverseness_badge),
            ("inclusiveness", self.inclusiveness_badge),
            ("likelihood", self.likelihood_badge),
        )

    def filenames(self, name: str) -> dict[str, str]:
        stem = safe_stem(name)
        return {kind: f"{stem}.{kind}.svg" for kind, _ in self.items()}


def safe_stem(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", name).strip("._") or "dataset"


def _text(x: float, y: float, content: str, *, size: int = 11, anchor: str = "start",
          weight: str | None = None, fill: str = "#222") -> str:
    attrs = f'x="{x:g}" y="{y:g}" font-size="{size}" text-anchor="{anchor}" fill="{fill}"'
    if weight:
        attrs += f' font-weight="{weight}"'
    return f"<text {attrs}>{escape(content)}</text>"


def _svg(width: int, height: int, body: list[str], title: str, defs: str = "") -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="{FONT}">'
    )
    parts = [head, f"<title>{escape(title)}</title>"]
    if defs:
        parts.append(f"<defs>{defs}</defs>")
    parts.append(f'<rect width="{width}" height="{height}" rx="4" fill="#fafafa" stroke="#ccc"/>')
    parts.extend(body)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _label(level) -> str:
    return str(level)


def _target_label(y) -> str:
    return f"Y={y}"


def dependence_badge(doc: AnnotationDocument) -> str:
    d = doc.dependence
    if not d.get("computable"):
        width = 360
        body = [
            _text(10, 22, "Dependence", size=13, weight="bold"),
            f'<rect x="10" y="34" width="{width - 20}" height="24" rx="3" fill="{NOT_COMPUTABLE}"/>',
            _text(width / 2, 51, "not computable", anchor="middle", fill="#fff"),
        ]
        return _svg(width, 70, body, f"Dependence: {doc.name}")

    labels = list(MAGNITUDE_COLORS)
    seg_w = 80
    width = 20 + seg_w * len(labels)
    body = [_text(10, 22, "Dependence", size=13, weight="bold")]
    for k, label in enumerate(labels):
        active = label == d["magnitude"]
        x = 10 + k * seg_w
        body.append(
            f'<rect x="{x}" y="34" width="{seg_w}" height="24" '
            f'fill="{MAGNITUDE_COLORS[label]}" fill-opacity="{1 if active else 0.25}"'
            f'{" stroke=" + quoteattr("#222") + " stroke-width=" + quoteattr("2") if active else ""}/>'
        )
        body.append(
            _text(x + seg_w / 2, 50, label, size=10, anchor="middle",
                  weight="bold" if active else None, fill="#111" if active else "#666")
        )
    disp = d["display"]
    body.append(_text(10, 80, f"magnitude: {d['magnitude']}", weight="bold"))
    body.append(_text(10, 98, f"w = {disp['effect_size_w']}"))
    body.append(_text(120, 98, f"C = {disp['contingency_coefficient']}"))
    if disp["chi_square"] != UNDEFINED_TOKEN:
        body.append(_text(230, 98, f"\u03c7\u00b2 = {disp['chi_square']}"))
    return _svg(width, 110, body, f"Dependence: {doc.name}")


def _bars(rows: list[dict], y0: int, heading: str, body: list[str], label_w: int, bar_w: int) -> int:
    body.append(_text(10, y0, heading, weight="bold"))
    y = y0 + 8
    for row in rows:
        p = row["p"]
        body.append(_text(10, y + 14, _label(row["level"])))
        body.append(f'<rect x="{label_w}" y="{y + 3}" width="{bar_w}" height="14" fill="#e6e6e6"/>')
        body.append(
            f'<rect class="bar" x="{label_w}" y="{y + 3}" width="{p * bar_w:.3f}" height="14" '
            f'fill="{BAR_COLOR}"/>'
        )
        body.append(_text(label_w + bar_w + 6, y + 14, row["display"]))
        y += ROW_H
    return y


def diverseness_badge(doc: AnnotationDocument) -> str:
    div = doc.diverseness
    levels = [r["level"] for r in div["protected"]]
    label_w = 20 + CHAR_W * max(len(_label(v)) for v in levels + ["Y=0"])
    bar_w = 160
    width = label_w + bar_w + 60
    body = [_text(10, 22, "Diverseness", size=13, weight="bold")]
    target_rows = [{**r, "level": _target_label(r["level"])} for r in div["target"]]
    y = _bars(target_rows, 44, "target", body, label_w, bar_w)
    y = _bars(div["protected"], y + 18, "protected attribute", body, label_w, bar_w)
    return _svg(width, y + 10, body, f"Diverseness: {doc.name}")


def _grid(cells: list[dict], rows: list, cols: list, key_row, key_col, y0: int,
          heading: str, body: list[str], label_w: int, col_label) -> int:
    body.append(_text(10, y0, heading, weight="bold"))
    y = y0 + 8
    for j, c in enumerate(cols):
        body.append(_text(label_w + j * CELL_W + CELL_W / 2, y + 14, col_label(c), anchor="middle"))
    y += ROW_H
    index = {(key_row(cell), key_col(cell)): cell for cell in cells}
    for r in rows:
        body.append(_text(10, y + 15, _label(r)))
        for j, c in enumerate(cols):
            cell = index[(r, c)]
            x = label_w + j * CELL_W
            if cell["p"] == UNDEFINED_TOKEN:
                body.append(
                    f'<rect class="undefined" x="{x + 1}" y="{y + 1}" width="{CELL_W - 2}" '
                    f'height="{ROW_H - 2}" fill="url(#{HATCH_ID})" stroke="#b00"/>'
                )
                body.append(_text(x + CELL_W / 2, y + 15, UNDEFINED_TOKEN, size=10, anchor="middle", fill="#b00"))
            else:
                body.append(
                    f'<rect class="cell" x="{x + 1}" y="{y + 1}" width="{CELL_W - 2}" '
                    f'height="{ROW_H - 2}" fill="{CELL_COLOR}" fill-opacity="{0.1 + 0.8 * cell["p"]:.3f}"/>'
                )
                fill = "#fff" if cell["p"] > 0.5 else "#111"
                body.append(_text(x + CELL_W / 2, y + 15, cell["display"], anchor="middle", fill=fill))
        y += ROW_H
    return y


def _levels(doc: AnnotationDocument) -> list:
    return [r["level"] for r in doc.diverseness["protected"]]


def inclusiveness_badge(doc: AnnotationDocument) -> str:
    levels = _levels(doc)
    label_w = 20 + CHAR_W * max(len(_label(v)) for v in levels)
    width = label_w + 2 * CELL_W + 20
    body = [_text(10, 22, "Inclusiveness", size=13, weight="bold")]
    y = _grid(doc.inclusiveness["joint"], levels, [0, 1],
              lambda c: c["level"], lambda c: c["target"], 44,
              "P(A and Y)", body, label_w, _target_label)
    return _svg(width, y + 10, body, f"Inclusiveness: {doc.name}")


def likelihood_badge(doc: AnnotationDocument) -> str:
    levels = _levels(doc)
    tl = doc.training_likelihood
    label_w = 20 + CHAR_W * max(len(_label(v)) for v in levels)
    width = max(label_w + 2 * CELL_W + 20, 240)
    body = [_text(10, 22, "Training likelihood", size=13, weight="bold")]
    y = _grid(tl["target_given_protected"], levels, [0, 1],
              lambda c: c["level"], lambda c: c["target"], 44,
              "P(Y | A)", body, label_w, _target_label)
    y = _grid(tl["protected_given_target"], levels, [0, 1],
              lambda c: c["level"], lambda c: c["target"], y + 18,
              "P(A | Y)", body, label_w, lambda c: f"given Y={c}")
    return _svg(width, y + 10, body, f"Training likelihood: {doc.name}", defs=HATCH_DEF)


def render_badges(document: AnnotationDocument) -> BadgeSet:
    return BadgeSet(
        dependence_badge=dependence_badge(document),
        diverseness_badge=diverseness_badge(document),
        inclusiveness_badge=inclusiveness_badge(document),
        likelihood_badge=likelihood_badge(document),
    )


_TEXT_NODE = re.compile(r"<text[^>]*>(.*?)</text>", re.S)
NUMBER = re.compile(r"\d+(?:\.\d+)?")


def text_nodes(svg: str) -> list[str]:
    return _TEXT_NODE.findall(svg)


def numeric_strings(svg: str) -> list[str]:
    """Every number that appears in the badge's visible text."""
    return [m for node in text_nodes(svg) for m in NUMBER.findall(node)]
