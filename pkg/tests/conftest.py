"""Shared corpus and an independent reference implementation.

The reference computes P, Q and Z straight from the defining equations, with
actual restriction and contraction matroids, flats found by brute force over
all subsets, and characteristic polynomials taken from the Tutte expansion.
It shares no code with the lattice-based engine beyond matroid minors.
"""

import random
from functools import lru_cache
from itertools import combinations

import pytest

from klrelax.matroid import (
    construct_graphic,
    construct_uniform,
    construct_wheel,
    direct_sum,
    full_mask,
    members,
    popcount,
    rim_mask,
    restrict_to,
    contract_set,
    structure,
)
from klrelax.matroid import make_sparse_paving_spec, random_sparse_paving_spec
from klrelax.poly import Poly, reciprocal_transform
from klrelax.tutte import characteristic_polynomial

K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def k4():
    return construct_graphic(4, K4_EDGES)


def brute_flats(M):
    return [A for A in range(1 << M.n) if M.closure(A) == A]


def _loopless(M):
    return structure(M).loops == 0


@lru_cache(maxsize=None)
def _ref_P(M):
    if M.n == 0:
        return Poly([1])
    if not _loopless(M):
        return Poly()
    k = M.k
    R = Poly()
    for F in brute_flats(M):
        if F == 0:
            continue
        chi = characteristic_polynomial(restrict_to(M, F), method="tutte")
        R = R + chi * _ref_P(contract_set(M, F))
    return Poly([R[k - i] for i in range((k + 1) // 2)])


@lru_cache(maxsize=None)
def _ref_Q(M):
    if M.n == 0:
        return Poly([1])
    if not _loopless(M):
        return Poly()
    k = M.k
    S = Poly()
    for F in brute_flats(M):
        if F == M.ground:
            continue
        r = M.rank(F)
        chi = characteristic_polynomial(contract_set(M, F), method="tutte")
        term = _ref_Q(restrict_to(M, F)) * reciprocal_transform(chi, k - r)
        S = S + (term if r % 2 == 0 else -term)
    sign = (-1) ** k
    return Poly([sign * S[k - i] for i in range((k + 1) // 2)])


def ref_P(M):
    return _ref_P(M)


def ref_Q(M):
    return _ref_Q(M)


def ref_Z(M):
    Z = Poly()
    for F in brute_flats(M):
        Z = Z + ref_P(contract_set(M, F)).shift(M.rank(F))
    return Z


def wheel_corpus():
    return [(construct_wheel(k), rim_mask(k)) for k in range(3, 7)]


def minimal_corpus():
    out = []
    for n in range(3, 10):
        for k in range(2, n):
            M = direct_sum(construct_uniform(k - 1, k), construct_uniform(1, n - k))
            out.append((M, full_mask(k)))
    return out


def k4_corpus():
    M = k4()
    triangles = [T for T in range(1 << 6) if popcount(T) == 3 and M.rank(T) == 2]
    return [(M, H) for H in triangles]


def random_specs(count=20, seed=2024, max_n=9):
    rng = random.Random(seed)
    specs = []
    while len(specs) < count:
        n = rng.randint(4, max_n)
        k = rng.randint(2, n - 2)
        spec = random_sparse_paving_spec(n, k, rng)
        if spec.lam:
            specs.append(spec)
    return specs


def k4_spec():
    M = k4()
    return make_sparse_paving_spec(6, 3, [H for H in combinations(range(6), 3)
                                          if M.rank(sum(1 << e for e in H)) == 2])


@pytest.fixture
def K4():
    return k4()


# -- acceptance reporting ----------------------------------------------------

ACCEPTANCE_LINES: dict[tuple, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
