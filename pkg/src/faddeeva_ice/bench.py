"""Throughput comparison of the two approximations on large input arrays."""

from __future__ import annotations

import hashlib
import math
import time

import numpy as np


def bench_points(size: int, seed: int) -> np.ndarray:
    """Deterministic upper half-plane sample: x uniform in [0, 15), log10 y uniform in [-4, log10 15)."""
    rng = np.random.default_rng(seed)
    x = rng.uniform(0.0, 15.0, size)
    y = 10.0 ** rng.uniform(-4.0, math.log10(15.0), size)
    return x + 1j * y


def checksum(values: np.ndarray) -> str:
    return hashlib.sha256(np.ascontiguousarray(values, dtype=complex).tobytes()).hexdigest()[:16]


def run_benchmark(engines, size: int, repetitions: int = 3, seed: int = 0) -> dict:
    """Time each engine on the same array; timings never touch the results.

    Returns a dict with the seed, size and, per engine name, the best wall
    time, throughput and a checksum of the output values.
    """
    if size < 1:
        raise ValueError("size must be >= 1")
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    z = bench_points(size, seed)
    report = {"seed": seed, "size": size, "repetitions": repetitions, "engines": {}}
    for engine in engines:
        best = math.inf
        out = None
        for _ in range(repetitions):
            t0 = time.perf_counter()
            out = engine(z)
            best = min(best, time.perf_counter() - t0)
        report["engines"][engine.name] = {
            "seconds": best,
            "points_per_second": size / best if best > 0 else math.inf,
            "checksum": checksum(out),
        }
    e = report["engines"]
    if "ice" in e and "weideman" in e:
        report["ratio_ice_over_weideman"] = (
            e["ice"]["points_per_second"] / e["weideman"]["points_per_second"]
            if e["weideman"]["points_per_second"] > 0
            else math.nan
        )
    return report


def format_report(report: dict) -> str:
    lines = [f"seed: {report['seed']}", f"size: {report['size']}", f"repetitions: {report['repetitions']}"]
    for name, r in report["engines"].items():
        lines.append(
            f"{name}: best {r['seconds']:.6f} s, {r['points_per_second']:.4g} points/s, checksum {r['checksum']}"
        )
    if "ratio_ice_over_weideman" in report:
        lines.append(f"throughput ratio ice:weideman = {report['ratio_ice_over_weideman']:.3f}")
    return "\n".join(lines) + "\n"
