"""File output: CSV artifacts, run manifests, atomic writes.

Formats are bit-exact contracts. Floats are rendered with repr, the shortest
decimal that round-trips the double, so identical inputs give byte-identical
files. All files are UTF-8 with LF newlines and are written to a temporary
name in the target directory, then renamed, so failures never leave partial
artifacts.
"""

from __future__ import annotations

import os
import tempfile
import time
from dataclasses import dataclass, field

GRID_MAGIC = "# pdem-wigner grid v1"
TABLE_MAGIC = "# pdem-wigner table v1"
SERIES_MAGIC = "# pdem-wigner series v1"


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def atomic_write_text(path: str, text: str):
    """Write text atomically: temp file in the same directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


@dataclass
class RunManifest:
    """Reproducibility record written alongside every artifact."""

    command: str
    parameters: dict
    version: str
    working_digits: str
    outputs: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    wall_seconds: float = 0.0
    _t0: float = field(default_factory=time.monotonic, repr=False)

    def add_output(self, path: str):
        self.outputs.append(path)

    def add_note(self, text: str):
        self.notes.append(text)

    def finish(self):
        self.wall_seconds = time.monotonic() - self._t0

    def render(self) -> str:
        lines = ["# pdem-wigner run manifest",
                 f"command: {self.command}",
                 f"version: {self.version}",
                 f"working_digits: {self.working_digits}"]
        for k in sorted(self.parameters):
            lines.append(f"param {k}: {_fmt(self.parameters[k])}")
        for note in self.notes:
            lines.append(f"note: {note}")
        for out in self.outputs:
            lines.append(f"output: {os.path.basename(out)}")
        lines.append(f"wall_seconds: {self.wall_seconds:.3f}")
        return "\n".join(lines) + "\n"

    def write_adjacent(self, anchor_path: str) -> str:
        self.finish()
        path = anchor_path + ".manifest.txt"
        atomic_write_text(path, self.render())
        return path


def grid_csv(state, grid) -> str:
    """Grid artifact: one row per (x, p) cell, x-major, shortest round-trip
    decimals."""
    lines = [GRID_MAGIC,
             (f"# case={state.case.value} n={state.n} l={_fmt(float(state.l))} "
              f"alpha={_fmt(float(state.alpha))} branch={state.profile.branch.value} "
              f"digits=16"),
             "# columns: x,p,W"]
    vals = grid.values
    for i, x in enumerate(grid.x_axis):
        xs = repr(float(x))
        for j, p in enumerate(grid.p_axis):
            lines.append(f"{xs},{repr(float(p))},{repr(float(vals[i, j]))}")
    return "\n".join(lines) + "\n"


def table_csv(results, digits_label: str, l_values) -> str:
    """Uncertainty-table artifact, one row per (l, case, n) cell."""
    lines = [TABLE_MAGIC,
             (f"# cases=I,III branch=monotone digits={digits_label} "
              f"l_grid={','.join(_fmt(float(l)) for l in l_values)}"),
             "# columns: l,case,n,delta_mu,delta_pi,product,asymptote_gap"]
    for r in results:
        gap = r.product - (r.n + 0.5)
        lines.append(f"{repr(float(r.l))},{r.case.value},{r.n},"
                     f"{repr(r.coord_spread)},{repr(r.momentum_spread)},"
                     f"{repr(r.product)},{repr(gap)}")
    return "\n".join(lines) + "\n"


def series_csv(header_fields: dict, columns: list, rows) -> str:
    """Generic long-format artifact for figure data."""
    head = " ".join(f"{k}={_fmt(v)}" for k, v in header_fields.items())
    lines = [SERIES_MAGIC, f"# {head}", "# columns: " + ",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"
