"""Relative-error maps of an approximation against the reference oracle.

A map holds log10 of the componentwise relative errors

    delta_re = |Re w - Re w_ref| / |Re w_ref|,   delta_im likewise,

on a rectangular (y, x) grid.  Exact agreement gives ``-inf``; points where
the reference component is below ``UNDERFLOW_FLOOR`` have no defined
relative error, are stored as ``nan`` and counted in the summary.
"""

from __future__ import annotations

import io
import math
import os
import tempfile
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .oracle import w_ref_array

UNDERFLOW_FLOOR = 1e-300
SCALES = ("lin", "log")

HEADLINE_GRID_TEXT = "x:lin:0:15:200,y:log:1e-4:15:200"
DEGRADED_GRID_TEXT = "x:lin:1e-4:15:200,y:log:1e-6:1e-4:200"


@dataclass(frozen=True)
class Axis:
    lo: float
    hi: float
    count: int
    scale: str = "lin"

    def __post_init__(self):
        if self.scale not in SCALES:
            raise ParameterError(f"axis scale must be one of {SCALES}, got {self.scale!r}")
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo < self.hi):
            raise ParameterError(f"axis needs finite min < max, got {self.lo}..{self.hi}")
        if self.scale == "log" and self.lo <= 0:
            raise ParameterError("log axis needs min > 0")
        if self.count < 2:
            raise ParameterError(f"axis count must be >= 2, got {self.count}")

    def values(self) -> np.ndarray:
        # open interval: cell centres, endpoints excluded by half a step
        frac = (np.arange(self.count) + 0.5) / self.count
        if self.scale == "lin":
            return self.lo + (self.hi - self.lo) * frac
        a, b = math.log10(self.lo), math.log10(self.hi)
        return 10.0 ** (a + (b - a) * frac)


@dataclass(frozen=True)
class GridSpec:
    x: Axis
    y: Axis

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """Parse ``"x:lin:0:15:200,y:log:1e-4:15:200"``."""
        axes = {}
        for part in text.split(","):
            fields = part.strip().split(":")
            if len(fields) != 5 or fields[0] not in ("x", "y"):
                raise ParameterError(f"bad grid axis {part!r}; expected name:scale:min:max:count")
            name, scale, lo, hi, count = fields
            try:
                axes[name] = Axis(float(lo), float(hi), int(count), scale)
            except ValueError as exc:
                if isinstance(exc, ParameterError):
                    raise
                raise ParameterError(f"bad number in grid axis {part!r}") from exc
        if set(axes) != {"x", "y"}:
            raise ParameterError("grid needs both an x and a y axis")
        return cls(axes["x"], axes["y"])

    def __str__(self):
        return ",".join(
            f"{n}:{a.scale}:{a.lo!r}:{a.hi!r}:{a.count}" for n, a in (("x", self.x), ("y", self.y))
        )

    def mesh(self) -> np.ndarray:
        """Complex points z[i, j] = x[j] + i*y[i]."""
        xs, ys = self.x.values(), self.y.values()
        return xs[None, :] + 1j * ys[:, None]


@dataclass(frozen=True)
class PartSummary:
    max: float
    p99: float
    median: float

    @classmethod
    def of(cls, log_err: np.ndarray) -> "PartSummary":
        v = log_err[~np.isnan(log_err)]
        if v.size == 0:
            return cls(math.nan, math.nan, math.nan)
        # order statistics commute with log10, so these are recomputable
        # from either the stored logs or the raw errors
        p99, med = np.percentile(v, [99, 50], method="nearest")
        return cls(float(v.max()), float(p99), float(med))


@dataclass
class ErrorMap:
    grid: GridSpec
    engine: str
    log10_delta_re: np.ndarray = field(repr=False)
    log10_delta_im: np.ndarray = field(repr=False)
    excluded_re: int = 0
    excluded_im: int = 0

    @property
    def summary_re(self) -> PartSummary:
        return PartSummary.of(self.log10_delta_re)

    @property
    def summary_im(self) -> PartSummary:
        return PartSummary.of(self.log10_delta_im)

    def holds(self, threshold_re: float | None = None, threshold_im: float | None = None) -> bool:
        ok = True
        if threshold_re is not None:
            ok &= self.summary_re.max < math.log10(threshold_re)
        if threshold_im is not None:
            ok &= self.summary_im.max < math.log10(threshold_im)
        return bool(ok)

    def summary_text(self, threshold_re: float | None = None, threshold_im: float | None = None) -> str:
        lines = [f"engine: {self.engine}", f"grid: {self.grid}"]
        for part, s, excl, thr in (
            ("re", self.summary_re, self.excluded_re, threshold_re),
            ("im", self.summary_im, self.excluded_im, threshold_im),
        ):
            lines.append(
                f"log10_delta_{part}: max={s.max:.3f} p99={s.p99:.3f} median={s.median:.3f} excluded={excl}"
            )
            if thr is not None:
                status = "ok" if s.max < math.log10(thr) else "FAIL"
                lines.append(f"threshold_{part}: {thr:g} (log10 {math.log10(thr):.3f}) {status}")
        return "\n".join(lines) + "\n"


def log10_relative_error(approx: np.ndarray, ref: np.ndarray):
    """Componentwise log10 relative errors and the counts of undefined points."""
    out = []
    for a, r in ((approx.real, ref.real), (approx.imag, ref.imag)):
        defined = np.abs(r) >= UNDERFLOW_FLOOR
        safe = np.where(defined, r, 1.0)
        with np.errstate(divide="ignore"):
            err = np.log10(np.abs((a - r) / safe))
        out.append((np.where(defined, err, np.nan), int((~defined).sum())))
    (re, n_re), (im, n_im) = out
    return re, im, n_re, n_im


def compute_error_map(grid: GridSpec, engine, reference: np.ndarray | None = None) -> ErrorMap:
    """Evaluate ``engine`` over ``grid`` and compare with the oracle.

    ``engine`` is any callable mapping complex arrays to w values with a
    ``name`` attribute.  ``reference`` may carry precomputed oracle values for
    the same grid; otherwise the oracle runs here and any integrity failure
    propagates before anything is returned.
    """
    z = grid.mesh()
    if reference is None:
        reference, _, _ = w_ref_array(z)
    elif reference.shape != z.shape:
        raise ParameterError("reference values do not match the grid shape")
    approx = np.asarray(engine(z))
    re, im, n_re, n_im = log10_relative_error(approx, reference)
    return ErrorMap(grid, getattr(engine, "name", str(engine)), re, im, n_re, n_im)


def format_matrix_csv(xs: np.ndarray, ys: np.ndarray, matrix: np.ndarray) -> str:
    """First row x values, first column y values, '.17g' cells."""
    buf = io.StringIO()
    buf.write("y\\x," + ",".join(format(v, ".17g") for v in xs) + "\n")
    for yv, row in zip(ys, matrix):
        buf.write(format(yv, ".17g") + "," + ",".join(format(v, ".17g") for v in row) + "\n")
    return buf.getvalue()


def parse_matrix_csv(text: str):
    """Inverse of :func:`format_matrix_csv`; returns ``(xs, ys, matrix)``."""
    rows = [line.split(",") for line in text.splitlines() if line]
    xs = np.array([float(v) for v in rows[0][1:]])
    ys = np.array([float(r[0]) for r in rows[1:]])
    matrix = np.array([[float(v) for v in r[1:]] for r in rows[1:]])
    return xs, ys, matrix


def _atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".csv")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def write_error_map(emap: ErrorMap, prefix: str, threshold_re=None, threshold_im=None) -> list[str]:
    """Write ``<prefix>_re.csv``, ``<prefix>_im.csv`` and ``<prefix>_summary.txt``."""
    xs, ys = emap.grid.x.values(), emap.grid.y.values()
    texts = {
        f"{prefix}_re.csv": format_matrix_csv(xs, ys, emap.log10_delta_re),
        f"{prefix}_im.csv": format_matrix_csv(xs, ys, emap.log10_delta_im),
        f"{prefix}_summary.txt": emap.summary_text(threshold_re, threshold_im),
    }
    for path, text in texts.items():
        _atomic_write(path, text)
    return list(texts)
