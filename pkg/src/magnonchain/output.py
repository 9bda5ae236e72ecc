"""Data export: CSV tables, SVG heatmaps, and the run manifest.

Determinism contract: the same data produces the same bytes.  Floats are
rendered with 17 significant digits (enough to round-trip a double),
rows keep computation order, and line endings are always ``\\n``.  The
manifest is written last and references every other file by checksum.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .config import ExperimentConfig, OutputRecord, RunManifest, chain_params, derived_dict

__all__ = ["format_number", "write_csv", "heatmap_svg", "RunWriter"]


def format_number(value) -> str:
    """17-significant-digit decimal form; integers stay integers."""
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(format_number(cell) for cell in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", newline="")


# viridis anchor colors, interpolated linearly in RGB
_CMAP = (
    (0.267004, 0.004874, 0.329415),
    (0.282623, 0.140926, 0.457517),
    (0.253935, 0.265254, 0.529983),
    (0.206756, 0.371758, 0.553117),
    (0.163625, 0.471133, 0.558148),
    (0.127568, 0.566949, 0.550556),
    (0.134692, 0.658636, 0.517649),
    (0.266941, 0.748751, 0.440573),
    (0.477504, 0.821444, 0.318195),
    (0.741388, 0.873449, 0.149561),
    (0.993248, 0.906157, 0.143936),
)


def _color(frac: float) -> str:
    frac = min(1.0, max(0.0, frac))
    pos = frac * (len(_CMAP) - 1)
    i = min(int(pos), len(_CMAP) - 2)
    t = pos - i
    r, g, b = (a + t * (b_ - a) for a, b_ in zip(_CMAP[i], _CMAP[i + 1]))
    return f"#{round(255 * r):02x}{round(255 * g):02x}{round(255 * b):02x}"


def heatmap_svg(
    matrix: np.ndarray,
    title: str,
    xlabel: str,
    ylabel: str,
    vmin: float | None = None,
    vmax: float | None = None,
) -> str:
    """A self-contained SVG heatmap of ``matrix`` (row 0 drawn at the
    bottom), with a colorbar.  Pure function of its arguments."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.size == 0:
        raise ValueError(f"heatmap needs a non-empty 2-D array, got shape {matrix.shape}")
    lo = float(matrix.min()) if vmin is None else vmin
    hi = float(matrix.max()) if vmax is None else vmax
    span = hi - lo if hi > lo else 1.0

    n_rows, n_cols = matrix.shape
    plot_w, plot_h = 560.0, 380.0
    left, top = 64.0, 42.0
    width, height = left + plot_w + 96.0, top + plot_h + 56.0
    cw, ch = plot_w / n_cols, plot_h / n_rows

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect width="{width:.0f}" height="{height:.0f}" fill="white"/>',
        f'<text x="{left + plot_w / 2:.1f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{title}</text>',
    ]
    for i in range(n_rows):
        y = top + plot_h - (i + 1) * ch
        for j in range(n_cols):
            c = _color((matrix[i, j] - lo) / span)
            parts.append(
                f'<rect x="{left + j * cw:.2f}" y="{y:.2f}" '
                f'width="{cw + 0.05:.2f}" height="{ch + 0.05:.2f}" fill="{c}"/>'
            )
    parts.append(
        f'<rect x="{left:.1f}" y="{top:.1f}" width="{plot_w:.1f}" height="{plot_h:.1f}" '
        'fill="none" stroke="black" stroke-width="1"/>'
    )
    parts.append(
        f'<text x="{left + plot_w / 2:.1f}" y="{top + plot_h + 36:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{xlabel}</text>'
    )
    parts.append(
        f'<text x="20" y="{top + plot_h / 2:.1f}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="13" transform="rotate(-90 20 {top + plot_h / 2:.1f})">{ylabel}</text>'
    )
    # colorbar
    bar_x, bar_w, n_seg = left + plot_w + 24.0, 16.0, 64
    seg_h = plot_h / n_seg
    for k in range(n_seg):
        parts.append(
            f'<rect x="{bar_x:.1f}" y="{top + plot_h - (k + 1) * seg_h:.2f}" '
            f'width="{bar_w:.1f}" height="{seg_h + 0.05:.2f}" fill="{_color((k + 0.5) / n_seg)}"/>'
        )
    parts.append(
        f'<rect x="{bar_x:.1f}" y="{top:.1f}" width="{bar_w:.1f}" height="{plot_h:.1f}" '
        'fill="none" stroke="black" stroke-width="1"/>'
    )
    for value, y in ((hi, top + 5.0), (lo, top + plot_h)):
        parts.append(
            f'<text x="{bar_x + bar_w + 6:.1f}" y="{y:.1f}" font-family="sans-serif" '
            f'font-size="11">{value:.3g}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


class RunWriter:
    """Collects the files and timings of one run, then seals them into a
    manifest.  Every ``csv``/``svg`` call registers a checksum; ``finish``
    writes ``manifest.json`` exactly once."""

    def __init__(self, out_dir: str | Path):
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self._records: list[OutputRecord] = []
        self._timings: dict[str, float] = {}
        self._finished = False

    def _register(self, path: Path) -> None:
        data = path.read_bytes()
        self._records.append(
            OutputRecord(
                path=path.name, sha256=hashlib.sha256(data).hexdigest(), bytes=len(data)
            )
        )

    def csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
        path = self.out_dir / name
        write_csv(path, header, rows)
        self._register(path)
        return path

    def svg(self, name: str, matrix: np.ndarray, title: str, xlabel: str, ylabel: str,
            vmin: float | None = None, vmax: float | None = None) -> Path:
        path = self.out_dir / name
        path.write_text(heatmap_svg(matrix, title, xlabel, ylabel, vmin, vmax), newline="")
        self._register(path)
        return path

    @contextmanager
    def timed(self, label: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self._timings[label] = self._timings.get(label, 0.0) + time.perf_counter() - t0

    def finish(self, config: ExperimentConfig, results: dict | None = None,
               params=None) -> RunManifest:
        """Seal the run.  ``params`` overrides the source of the derived
        couplings when the run used parameters the config does not carry
        (presets fix their own)."""
        if self._finished:
            raise RuntimeError("manifest already written for this run")
        self._finished = True
        manifest = RunManifest(
            config=config.model_dump(mode="json"),
            derived=derived_dict(params if params is not None else chain_params(config)),
            version=__version__,
            outputs=list(self._records),
            timings={k: round(v, 6) for k, v in self._timings.items()},
            results=_jsonable(results or {}),
        )
        (self.out_dir / "manifest.json").write_text(
            manifest.model_dump_json(indent=2) + "\n", newline=""
        )
        return manifest


def _jsonable(obj):
    """Plain-JSON view of results built from numpy scalars and tuples."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj
