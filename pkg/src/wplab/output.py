"""Deterministic artifact writers: CSV, JSON, SVG, and the output-dir lock.

Identical inputs must produce byte-identical files, so every float is
rendered at 17 significant digits, JSON objects are emitted with sorted keys,
and the SVG backend runs headless with a fixed hash salt and no timestamp
metadata.  Non-finite floats become ``nan``/``inf`` text in CSV and ``null``
in JSON.
"""

from __future__ import annotations

import csv
import json
import math
import os
from contextlib import contextmanager
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")

LOCK_NAME = ".wplab.lock"
FLOAT_FMT = "%.17g"


class LockHeldError(RuntimeError):
    """Another process owns this output directory."""


@contextmanager
def directory_lock(out_dir: str | Path):
    """Exclusive ownership of an output directory for the life of a command."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    lock = out / LOCK_NAME
    try:
        fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
    except FileExistsError:
        raise LockHeldError(
            f"output directory {out} is locked by another run "
            f"(stale? remove {lock})") from None
    try:
        os.write(fd, f"{os.getpid()}\n".encode())
    finally:
        os.close(fd)
    try:
        yield out
    finally:
        try:
            lock.unlink()
        except OSError:
            pass


# CSV ----------------------------------------------------------------------


def format_cell(value) -> str:
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return FLOAT_FMT % float(value)
    return str(value)


def write_csv(path: str | Path, fieldnames: list[str], rows) -> None:
    """Header plus rows, fixed field order, one LF per line."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(fieldnames)
        for row in rows:
            writer.writerow([format_cell(v) for v in row])


# JSON ---------------------------------------------------------------------


def _json_scalar(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if not math.isfinite(v):
            return "null"
        return FLOAT_FMT % v
    if isinstance(value, str):
        return json.dumps(value)
    raise TypeError(f"not JSON-serializable: {type(value).__name__}")


def _json_emit(value, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        keys = sorted(value)
        for i, key in enumerate(keys):
            if not isinstance(key, str):
                raise TypeError("JSON object keys must be strings")
            out.append(f"{inner}{_json_scalar(key)}: ")
            _json_emit(value[key], indent + 1, out)
            out.append(",\n" if i + 1 < len(keys) else "\n")
        out.append(pad + "}")
        return
    if isinstance(value, (list, tuple, np.ndarray)):
        items = list(value)
        if not items:
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(items):
            out.append(inner)
            _json_emit(item, indent + 1, out)
            out.append(",\n" if i + 1 < len(items) else "\n")
        out.append(pad + "]")
        return
    out.append(_json_scalar(value))


def json_text(value) -> str:
    """Canonical JSON: sorted keys, 2-space indent, 17-digit floats."""
    out: list[str] = []
    _json_emit(value, 0, out)
    out.append("\n")
    return "".join(out)


def write_json(path: str | Path, value) -> None:
    Path(path).write_text(json_text(value))


# SVG ----------------------------------------------------------------------


def _new_figure(width: float = 6.4, height: float = 4.8):
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "wplab"
    fig, ax = plt.subplots(figsize=(width, height), dpi=100)
    return plt, fig, ax


def _save(plt, fig, path: str | Path) -> None:
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def svg_heatmap(path: str | Path, xs: np.ndarray, ps: np.ndarray, values: np.ndarray,
                title: str) -> None:
    """Diverging phase-space heatmap centered at zero (negativity in blue)."""
    plt, fig, ax = _new_figure()
    bound = float(np.max(np.abs(values))) or 1.0
    # one embedded raster, not one vector path per cell
    mesh = ax.imshow(values.T, cmap="RdBu_r", vmin=-bound, vmax=bound,
                     origin="lower", aspect="auto", interpolation="nearest",
                     extent=(float(xs[0]), float(xs[-1]), float(ps[0]), float(ps[-1])))
    fig.colorbar(mesh, ax=ax, label="W")
    ax.set_xlabel("x")
    ax.set_ylabel("p")
    ax.set_title(title)
    _save(plt, fig, path)


def svg_profile(path: str | Path, coords: np.ndarray, energies: np.ndarray,
                reference: np.ndarray, poles, axis: str, title: str) -> None:
    """Average energy along one axis over its reference curve, poles marked.

    The reference curve is the potential (x axis) or the kinetic energy
    (p axis); the y range is clipped to a fixed multiple of its span so the
    divergences at the poles do not flatten everything else.
    """
    plt, fig, ax = _new_figure()
    finite = energies[np.isfinite(energies)]
    ref_lo = float(reference.min())
    ref_hi = float(reference.max())
    span = max(ref_hi - ref_lo, 1.0)
    lo = ref_lo - 0.25 * span
    hi = ref_hi + 0.25 * span
    if finite.size:
        hi = max(hi, float(np.percentile(finite, 90.0)))
    ax.plot(coords, reference, color="#c03028", lw=1.2,
            label="U(x)" if axis == "x" else "T(p)")
    ax.plot(coords, energies, color="#1f4e9c", lw=1.4, label="<E>")
    for pole in poles:
        ax.axvline(pole, color="#777777", lw=0.8, ls="--")
    ax.set_ylim(lo, hi)
    ax.set_xlabel(axis)
    ax.set_ylabel("energy")
    ax.set_title(title)
    ax.legend(loc="upper left")
    _save(plt, fig, path)


def svg_report(path: str | Path, axes_data, title: str) -> None:
    """Stacked per-axis panels: Wigner slice, negativity bands, pole lines.

    ``axes_data`` is a list of (axis, coords, slice values, intervals,
    faint intervals, poles).
    """
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "wplab"
    fig, axs = plt.subplots(len(axes_data), 1, figsize=(6.4, 3.2 * len(axes_data)),
                            dpi=100, squeeze=False)
    for ax, (axis, coords, wvals, intervals, faint, poles) in zip(axs[:, 0], axes_data):
        for iv in faint:
            ax.axvspan(iv.lo, iv.hi, color="#d8c8e8", alpha=0.5)
        for iv in intervals:
            ax.axvspan(iv.lo, iv.hi, color="#8fb7e8", alpha=0.6)
        ax.plot(coords, wvals, color="#1a1a1a", lw=1.2)
        ax.axhline(0.0, color="#999999", lw=0.6)
        for pole in poles:
            ax.axvline(pole, color="#c03028", lw=1.0, ls="--")
        ax.set_xlabel(axis)
        ax.set_ylabel(f"W({axis}, 0)" if axis == "x" else "W(0, p)")
    fig.suptitle(title)
    fig.tight_layout()
    _save(plt, fig, path)


def svg_wavefunctions(path: str | Path, xs: np.ndarray, curves, potential_vals: np.ndarray,
                      energies, title: str) -> None:
    """Probability densities offset by eigenenergy over the potential curve."""
    plt, fig, ax = _new_figure()
    ax.plot(xs, potential_vals, color="#c03028", lw=1.2, label="U(x)")
    for (label, density), energy in zip(curves, energies):
        ax.plot(xs, density + energy, lw=1.2, label=label)
        ax.axhline(energy, color="#bbbbbb", lw=0.5)
    lo = float(min(0.0, potential_vals.min()))
    hi = max((e for e in energies), default=1.0) + 2.0
    ax.set_ylim(lo - 0.5, hi)
    ax.set_xlabel("x")
    ax.set_ylabel("energy / shifted density")
    ax.set_title(title)
    ax.legend(loc="upper left", fontsize=8)
    _save(plt, fig, path)
