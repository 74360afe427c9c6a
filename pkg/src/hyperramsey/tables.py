"""Rendering interval grids as text, CSV or JSON, and reading the bundled reference grids."""

from __future__ import annotations

import csv
import io
import json
import re
from importlib import resources
from pathlib import Path

from .bounds import PATH, TREE, best_interval, goodness_target, n_good_status

GOLDEN_NAMES = {TREE: "tree_grid", PATH: "path_grid"}
TABLE_ROWS = tuple(range(5, 16, 2))
TABLE_COLS = tuple(range(4, 11))
FORMATS = ("text", "csv", "json")


def parse_range(text: str) -> list[int]:
    """'5..15' (inclusive), '7' or '4,6,8'."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo_i, hi_i = int(lo), int(hi)
            if lo_i > hi_i:
                raise ValueError
            return list(range(lo_i, hi_i + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise ValueError(f"bad range {text!r}; expected A..B, A or A,B,...") from None


def _cell_text(lo: int, hi: int | None) -> str:
    if lo == hi:
        return str(lo)
    return f"[{lo}, {'?' if hi is None else hi}]"


def render_table(family: str, rows: list[int], cols: list[int], fmt: str = "text", r: int = 3) -> str:
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}")
    grid = [[best_interval(family, m, n, r) for n in cols] for m in rows]
    if fmt == "text":
        lines = [" | ".join(["m \\ n"] + [str(n) for n in cols])]
        for m, row in zip(rows, grid):
            lines.append(" | ".join([str(m)] + [_cell_text(iv.lower, iv.upper) for iv in row]))
        return "\n".join(lines) + "\n"
    records = []
    for m, row in zip(rows, grid):
        for n, iv in zip(cols, row):
            records.append({
                "family": family,
                "m": m,
                "n": n,
                "r": r,
                "lower": iv.lower,
                "upper": iv.upper,
                "lower_source": iv.lower_src.source,
                "upper_source": iv.upper_src.source if iv.upper_src else None,
                "target": goodness_target(m, n, r),
                "status": n_good_status(family, m, n, r),
            })
    if fmt == "json":
        return json.dumps(records, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(records[0]) if records else ["m", "n"], lineterminator="\n")
    writer.writeheader()
    writer.writerows(records)
    return buf.getvalue()


def golden_text(family: str, golden_dir: Path | None = None, symbolic: bool = False) -> str:
    name = GOLDEN_NAMES[family] + ("_symbolic" if symbolic else "") + ".txt"
    if golden_dir is not None:
        return (Path(golden_dir) / name).read_text()
    return resources.files("hyperramsey").joinpath("data", name).read_text()


def diff_cells(expected: str, actual: str) -> list[str]:
    """Cell-by-cell differences between two text grids, named as (m, n)."""
    exp = [line.split(" | ") for line in expected.strip("\n").split("\n")]
    act = [line.split(" | ") for line in actual.strip("\n").split("\n")]
    out = []
    if exp[:1] != act[:1]:
        out.append(f"header: expected {exp[:1]}, got {act[:1]}")
    cols = exp[0][1:] if exp else []
    for i in range(1, max(len(exp), len(act))):
        e = exp[i] if i < len(exp) else []
        a = act[i] if i < len(act) else []
        m = (e or a)[0]
        for k in range(1, max(len(e), len(a))):
            ev = e[k] if k < len(e) else "<missing>"
            av = a[k] if k < len(a) else "<missing>"
            if ev != av:
                n = cols[k - 1] if k - 1 < len(cols) else "?"
                out.append(f"cell (m={m}, n={n}): expected {ev}, got {av}")
    return out


_TERM = re.compile(r"^(\d*)j([+-]\d+)?$")


def eval_linear(expr: str, j: int) -> int:
    """Evaluate 'aj+b', 'aj-b' or 'aj' at j."""
    match = _TERM.match(expr.strip())
    if not match:
        raise ValueError(f"cannot evaluate {expr!r}")
    a = int(match.group(1) or 1)
    b = int(match.group(2) or 0)
    return a * j + b


def eval_symbolic_row(row: str, j: int) -> tuple[int, list[tuple[int, int]]]:
    """(m, [(lower, upper), ...]) from a row such as '2j+1 | [2j+2, 3j] | 4j+1'."""
    parts = [p.strip() for p in row.strip().split(" | ")]
    m = eval_linear(parts[0], j)
    cells = []
    for p in parts[1:]:
        if p.startswith("["):
            lo, hi = p[1:-1].split(",")
            cells.append((eval_linear(lo, j), eval_linear(hi, j)))
        else:
            v = eval_linear(p, j)
            cells.append((v, v))
    return m, cells
