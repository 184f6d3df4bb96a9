"""Tutte and characteristic polynomials of a matroid."""

from __future__ import annotations

import numpy as np

from .errors import GroundSetTooLargeForTutte
from .lattice import flat_lattice
from .matroid import Matroid, structure
from .poly import BiPoly, Poly

TUTTE_MAX_ELEMENTS = 24


def rank_table(M: Matroid) -> np.ndarray:
    """Rank of every subset, indexed by bit pattern (``2**n`` entries)."""
    n = M.n
    if n > TUTTE_MAX_ELEMENTS:
        raise GroundSetTooLargeForTutte(f"{n} elements; the subset sum is capped at {TUTTE_MAX_ELEMENTS}")
    size = 1 << n
    indep = np.zeros(size, dtype=bool)
    indep[np.fromiter(M.bases, dtype=np.int64, count=len(M.bases))] = True
    for e in range(n):
        v = indep.reshape(-1, 2, 1 << e)
        v[:, 0, :] |= v[:, 1, :]
    sizes = _popcounts(n)
    rank = np.where(indep, sizes, 0).astype(np.int8)
    for e in range(n):
        v = rank.reshape(-1, 2, 1 << e)
        np.maximum(v[:, 1, :], v[:, 0, :], out=v[:, 1, :])
    return rank


def _popcounts(n: int) -> np.ndarray:
    out = np.zeros(1 << n, dtype=np.int8)
    for e in range(n):
        out.reshape(-1, 2, 1 << e)[:, 1, :] += 1
    return out


def corank_nullity_counts(M: Matroid) -> dict[tuple[int, int], int]:
    """How many subsets A have (k - rk A, |A| - rk A) equal to each pair."""
    rank = rank_table(M).astype(np.int64)
    sizes = _popcounts(M.n).astype(np.int64)
    corank = M.k - rank
    nullity = sizes - rank
    width = M.n + 1
    counts = np.bincount(corank * width + nullity, minlength=width * width)
    return {(int(i) // width, int(i) % width): int(c) for i, c in enumerate(counts) if c}


def tutte_polynomial(M: Matroid) -> BiPoly:
    terms: dict[tuple[int, int], int] = {}
    for (a, b), c in corank_nullity_counts(M).items():
        # (x - 1)^a (y - 1)^b
        xa = Poly.binomial_power(-1, 1, a)
        yb = Poly.binomial_power(-1, 1, b)
        for i, ci in enumerate(xa.coeffs):
            for j, cj in enumerate(yb.coeffs):
                terms[(i, j)] = terms.get((i, j), 0) + c * ci * cj
    return BiPoly.from_dict(terms)


def characteristic_polynomial(M: Matroid, method: str = "mobius") -> Poly:
    """``chi_M(t)``; the zero polynomial when M has loops.

    ``method="mobius"`` sums Möbius values over the lattice of flats,
    ``method="tutte"`` specialises the corank-nullity expansion at ``(1 - t, 0)``.
    """
    if method == "tutte":
        coeffs = [0] * (M.k + 1)
        for (a, b), c in corank_nullity_counts(M).items():
            # (x-1)^a (y-1)^b at x = 1-t, y = 0 is (-t)^a (-1)^b
            coeffs[a] += c * (-1) ** (a + b)
        sign = (-1) ** M.k
        return Poly([sign * c for c in coeffs])
    if method != "mobius":
        raise ValueError(f"unknown method {method!r}")
    if structure(M).loops:
        return Poly()
    L = flat_lattice(M)
    return L.characteristic(L.bottom, L.top)
