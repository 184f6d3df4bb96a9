"""Exhaustive checks over every sparse paving parameter triple (n, k, lambda).

For fixed (n, k) each invariant is an affine function of lambda:
``F(lambda) = U - lambda * delta``.  The scan exploits this to certify whole
runs of lambda at once while staying exact:

* non-negativity of a coefficient is a linear condition in lambda;
* each log-concavity inequality is a quadratic condition in lambda;
* real-rootedness of a degree-d member is certified by d + 1 rational points
  at which it alternates in sign.  Each such sign condition is linear in
  lambda, so one set of points certifies an interval of lambda values.  The
  points come from floating-point roots, but only the exact sign evaluations
  count.  When no certificate is found the exact Sturm test decides.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, isqrt

import numpy as np

from .analysis import is_log_concave, is_nonnegative, is_real_rooted
from .closed_forms import delta_p, delta_q, delta_z, lambda_bound, uniform_P, uniform_Q, uniform_Z
from .poly import Poly

CHECKS = ("real-rooted", "log-concave", "nonneg")
DEFAULT_MAX_N = 25
SUPPORTED_MAX_N = 30

Ranges = list  # list of inclusive (lo, hi) integer pairs, sorted and disjoint


def _merge(ranges) -> Ranges:
    out: list[list[int]] = []
    for lo, hi in sorted(ranges):
        if out and lo <= out[-1][1] + 1:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return [tuple(r) for r in out]


def _in_ranges(x: int, ranges: Ranges) -> bool:
    return any(lo <= x <= hi for lo, hi in ranges)


# -- conditions polynomial in lambda -----------------------------------------


def _negative_ranges(c: tuple, lo: int, hi: int) -> Ranges:
    """Integers x in [lo, hi] with ``c[0] + c[1] x + c[2] x^2 < 0`` (degree <= 2)."""
    c = list(c) + [0] * (3 - len(c))
    g, b, a = c
    value = lambda x: (a * x + b) * x + g  # noqa: E731
    # integer neighbourhoods of the real roots; between them the sign is constant
    marks = set()
    if a:
        disc = b * b - 4 * a * g
        if disc >= 0:
            s = isqrt(disc)
            for num in (-b - s, -b + s):
                marks.add(floor(Fraction(num, 2 * a)))
    elif b:
        marks.add(floor(Fraction(-g, b)))
    points = {lo, hi + 1}
    for m in marks:
        points.update(x for x in range(m - 2, m + 4) if lo <= x <= hi + 1)
    points = sorted(points)
    bad = []
    for start, stop in zip(points, points[1:]):
        if value(start) < 0:
            bad.append((start, stop - 1))
    return _merge(bad)


def _nonneg_failures(U: Poly, D: Poly, lam_max: int) -> Ranges:
    bad = []
    for i in range(max(len(U), len(D))):
        bad += _negative_ranges((U[i], -D[i]), 0, lam_max)
    return _merge(bad)


def _log_concave_failures(U: Poly, D: Poly, lam_max: int) -> Ranges:
    # coefficients beyond the last nonzero one of F(lambda) are zero, and a zero
    # c_{i+1} makes the inequality hold, so all indices can be tested uniformly
    bad = []
    width = max(len(U), len(D))
    for i in range(1, width - 1):
        a0, a1 = U[i], -D[i]
        l0, l1 = U[i - 1], -D[i - 1]
        r0, r1 = U[i + 1], -D[i + 1]
        quad = (a0 * a0 - l0 * r0, 2 * a0 * a1 - l0 * r1 - l1 * r0, a1 * a1 - l1 * r1)
        bad += _negative_ranges(quad, 0, lam_max)
    return _merge(bad)


def _separating_points(f: Poly):
    """Rational points strictly separating the (numerical) roots of ``f``."""
    coeffs = np.array([float(c) for c in reversed(f.coeffs)])
    if not np.all(np.isfinite(coeffs)):
        return None
    roots = np.roots(coeffs)
    if roots.size != f.degree:
        return None
    scale = np.maximum(np.abs(roots), 1.0)
    if np.any(np.abs(roots.imag) > 1e-9 * scale):
        return None
    r = np.sort(roots.real)
    pts = [r[0] - max(1.0, abs(r[0]))]
    for x, y in zip(r, r[1:]):
        if x == y:
            return None
        if x < 0 and y < 0:
            pts.append(-float(np.sqrt(x * y)))
        elif x > 0 and y > 0:
            pts.append(float(np.sqrt(x * y)))
        else:
            pts.append((x + y) / 2)
    pts.append(r[-1] + max(1.0, abs(r[-1])))
    return [Fraction(p) for p in pts]


def _certified_until(U: Poly, D: Poly, lam: int, lam_max: int) -> int | None:
    """Largest L >= lam such that ``U - x D`` is real-rooted of full degree for
    every integer x in [lam, L], certified by sign alternation; None if no
    certificate for ``lam`` itself is found."""
    full = max(U.degree, D.degree)
    f = U - D * lam
    if f.degree != full:
        return None
    pts = _separating_points(f)
    if pts is None:
        return None
    top = lam_max
    sign = None
    for i, x in enumerate(pts):
        u, d = U(x), D(x)
        v = u - lam * d
        if v == 0:
            return None
        want = (1 if v > 0 else -1) if sign is None else -sign
        if (v > 0) != (want > 0):
            return None
        sign = want
        # need want * (u - x*d) > 0 for the lambdas we accept
        slope = -want * d
        if slope < 0:
            # want*u + slope*x > 0  <=>  x < want*u / -slope
            bound = Fraction(want * u, -slope)
            top = min(top, -floor(-bound) - 1)
        elif slope == 0 and want * u <= 0:
            return None
    return top if top >= lam else None


def _real_rooted_failures(U: Poly, D: Poly, lam_max: int, stats: dict) -> Ranges:
    if max(U.degree, D.degree) <= 1:
        return []
    bad = []
    lam = 0
    while lam <= lam_max:
        upto = _certified_until(U, D, lam, lam_max)
        if upto is not None:
            stats["certificates"] = stats.get("certificates", 0) + 1
            lam = upto + 1
            continue
        stats["sturm"] = stats.get("sturm", 0) + 1
        if not is_real_rooted(U - D * lam):
            bad.append((lam, lam))
        lam += 1
    return _merge(bad)


# -- cells and reports -------------------------------------------------------


@dataclass
class CellResult:
    """Failing lambda ranges for one (n, k) cell, one list per check key."""

    n: int
    k: int
    lam_max: int
    failures: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)

    @property
    def count(self) -> int:
        return self.lam_max + 1

    def failure_count(self) -> int:
        bad: set[int] = set()
        for ranges in self.failures.values():
            for lo, hi in ranges:
                bad.update(range(lo, hi + 1))
        return len(bad)


ENTRY_KEYS = {
    "p_real_rooted": "real-rooted",
    "z_real_rooted": "real-rooted",
    "q_log_concave": "log-concave",
    "all_nonnegative": "nonneg",
}


def _cell_inputs(n: int, k: int):
    return {
        "P": (uniform_P(k, n), delta_p(k)),
        "Q": (uniform_Q(k, n), delta_q(k)),
        "Z": (uniform_Z(k, n), delta_z(k)),
    }


def scan_cell(n: int, k: int, checks=CHECKS, method: str = "interval") -> CellResult:
    lam_max = lambda_bound(n, k)
    polys = _cell_inputs(n, k)
    cell = CellResult(n, k, lam_max)
    if method == "direct":
        return _scan_cell_direct(cell, polys, checks)
    if method != "interval":
        raise ValueError(f"unknown scan method {method!r}")
    if "real-rooted" in checks:
        cell.failures["p_real_rooted"] = _real_rooted_failures(*polys["P"], lam_max, cell.stats)
        cell.failures["z_real_rooted"] = _real_rooted_failures(*polys["Z"], lam_max, cell.stats)
    if "log-concave" in checks:
        cell.failures["q_log_concave"] = _log_concave_failures(*polys["Q"], lam_max)
    if "nonneg" in checks:
        cell.failures["all_nonnegative"] = _merge(
            r for name in "PQZ" for r in _nonneg_failures(*polys[name], lam_max))
    return cell


def _scan_cell_direct(cell: CellResult, polys: dict, checks) -> CellResult:
    tests = {}
    if "real-rooted" in checks:
        tests["p_real_rooted"] = lambda F: is_real_rooted(F["P"])
        tests["z_real_rooted"] = lambda F: is_real_rooted(F["Z"])
    if "log-concave" in checks:
        tests["q_log_concave"] = lambda F: is_log_concave(F["Q"])
    if "nonneg" in checks:
        tests["all_nonnegative"] = lambda F: all(is_nonnegative(F[x]) for x in "PQZ")
    bad: dict[str, list] = {key: [] for key in tests}
    for lam in range(cell.lam_max + 1):
        F = {name: U - D * lam for name, (U, D) in polys.items()}
        for key, test in tests.items():
            if not test(F):
                bad[key].append((lam, lam))
    cell.failures = {key: _merge(r) for key, r in bad.items()}
    return cell


@dataclass
class ScanReport:
    horizon: int
    checks: tuple
    cells: list[CellResult]
    elapsed: float = 0.0

    def entries(self):
        """One dict per (n, k, lambda), in (n, k, lambda) order.

        Checks that were not requested are reported as None.
        """
        for cell in self.cells:
            for lam in range(cell.lam_max + 1):
                row = {"n": cell.n, "k": cell.k, "lambda": lam}
                for key in ENTRY_KEYS:
                    ranges = cell.failures.get(key)
                    row[key] = None if ranges is None else not _in_ranges(lam, ranges)
                yield row

    def entry_count(self) -> int:
        return sum(c.count for c in self.cells)

    def failures(self):
        """Entries with at least one failed check."""
        for cell in self.cells:
            if not any(cell.failures.values()):
                continue
            lams = sorted({x for r in cell.failures.values() for lo, hi in r for x in range(lo, hi + 1)})
            for lam in lams:
                row = {"n": cell.n, "k": cell.k, "lambda": lam}
                for key in ENTRY_KEYS:
                    ranges = cell.failures.get(key)
                    row[key] = None if ranges is None else not _in_ranges(lam, ranges)
                yield row

    def failure_count(self) -> int:
        return sum(c.failure_count() for c in self.cells)

    @property
    def ok(self) -> bool:
        return self.failure_count() == 0

    def write_jsonl(self, stream) -> None:
        for row in self.entries():
            stream.write(json.dumps(row) + "\n")

    def summary(self) -> dict:
        per_check = {key: sum(len({x for lo, hi in c.failures.get(key, []) for x in range(lo, hi + 1)})
                              for c in self.cells) for key in ENTRY_KEYS}
        return {
            "horizon": self.horizon,
            "checks": list(self.checks),
            "lambda_range": "full interval 0..lambda_bound(n,k)",
            "cells": len(self.cells),
            "entries": self.entry_count(),
            "failures": self.failure_count(),
            "failures_by_check": per_check,
        }

    def summary_text(self) -> str:
        s = self.summary()
        lines = [
            f"sparse paving scan, n <= {s['horizon']}, lambda over the full interval [0, lambda_bound(n,k)]",
            f"checks: {', '.join(s['checks'])}",
            f"cells scanned: {s['cells']}",
            f"(n,k,lambda) entries: {s['entries']}",
            f"failures: {s['failures']}",
        ]
        for key, c in s["failures_by_check"].items():
            if c:
                lines.append(f"  {key}: {c}")
        lines.append(f"wall time: {self.elapsed:.1f}s")
        return "\n".join(lines)


def cells_up_to(max_n: int):
    return [(n, k) for n in range(2, max_n + 1) for k in range(1, n)]


def _run_cell(args):
    n, k, checks, method = args
    return scan_cell(n, k, checks, method)


def scan_sparse_paving(max_n: int = DEFAULT_MAX_N, checks=CHECKS, lam_mode: str = "full-interval",
                       *, jobs: int = 1, method: str = "interval", allow_large: bool = False,
                       progress=None) -> ScanReport:
    """Check every sparse paving triple with n <= max_n, 1 <= k < n and
    0 <= lambda <= lambda_bound(n, k)."""
    if lam_mode != "full-interval":
        raise ValueError(f"unsupported lambda mode {lam_mode!r}")
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}")
    if max_n > SUPPORTED_MAX_N:
        raise ValueError(f"max_n above {SUPPORTED_MAX_N} is not supported")
    if max_n > DEFAULT_MAX_N and not allow_large:
        raise ValueError(f"max_n above {DEFAULT_MAX_N} needs allow_large=True")
    checks = tuple(c for c in CHECKS if c in checks)
    start = time.perf_counter()
    work = [(n, k, checks, method) for n, k in cells_up_to(max_n)]
    cells: list[CellResult] = []
    if jobs > 1 and len(work) > 1:
        import multiprocessing as mp

        with mp.get_context("spawn").Pool(jobs) as pool:
            for cell in pool.imap(_run_cell, work):
                cells.append(cell)
                if progress:
                    progress(cell)
    else:
        for w in work:
            cells.append(_run_cell(w))
            if progress:
                progress(cells[-1])
    return ScanReport(max_n, checks, cells, time.perf_counter() - start)
