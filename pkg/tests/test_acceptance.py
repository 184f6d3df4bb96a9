"""Acceptance criteria, one test each.

Every test records a single PASS/FAIL line, printed in the terminal summary
and also on stdout when this file is run directly.  All comparisons are exact.
The n <= 30 scan runs only when KLRELAX_FULL_SCAN=1 is set.
"""

import os
import random
import sys
import time
import warnings
from contextlib import contextmanager

import pytest

from conftest import ACCEPTANCE_LINES, k4, k4_spec, random_specs
from klrelax.analysis import is_nondegenerate, verify_relaxation
from klrelax.closed_forms import (
    delta_p,
    delta_q,
    delta_z,
    delta_z_binomial,
    delta_z_from_p,
    p_equation_residual,
    q_equation_residual,
    sparse_paving_triple,
    uniform_P,
    uniform_P_corank1_formula,
    uniform_Q,
    uniform_Z,
)
from klrelax.kl import kl_P, kl_Q, kl_triple, kl_Z
from klrelax.lattice import flat_lattice
from klrelax.matroid import (
    circuit_hyperplanes,
    construct_graphic,
    construct_minimal_relaxed,
    construct_uniform,
    construct_wheel,
    construct_whirl,
    direct_sum,
    free_bases,
    full_mask,
    random_sparse_paving_spec,
    relax,
    rim_mask,
    sparse_paving_from_spec,
    structure,
)
from klrelax.poly import Poly
from klrelax.scan import scan_sparse_paving


@contextmanager
def criterion(number: int, title: str, part: int = 0):
    key = (number, part)
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        line = f"[FAIL] criterion {number}: {title} ({type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''})"
        ACCEPTANCE_LINES[key] = line
        print(line)
        raise
    line = f"[PASS] criterion {number}: {title} ({time.perf_counter() - start:.1f}s)"
    ACCEPTANCE_LINES[key] = line
    print(line)


TABLE_P = {
    1: [1], 2: [0], 3: [0, 2], 4: [0, 3], 5: [0, 4, 5], 6: [0, 5, 16], 7: [0, 6, 35, 14],
    8: [0, 7, 64, 70], 9: [0, 8, 105, 216, 42], 10: [0, 9, 160, 525, 288],
    11: [0, 10, 231, 1100, 1155, 132], 12: [0, 11, 320, 2079, 3520, 1155],
}
TABLE_Q = {
    1: [1], 2: [1], 3: [1, 2], 4: [1, 3], 5: [1, 4, 5], 6: [1, 5, 9], 7: [1, 6, 14, 14],
    8: [1, 7, 20, 28], 9: [1, 8, 27, 48, 42], 10: [1, 9, 35, 75, 90],
    11: [1, 10, 44, 110, 165, 132], 12: [1, 11, 54, 154, 275, 297],
}
TABLE_Z = {
    1: [0], 2: [0, 1], 3: [0, 2, 2], 4: [0, 3, 8, 3], 5: [0, 4, 20, 20, 4], 6: [0, 5, 40, 75, 40, 5],
    7: [0, 6, 70, 210, 210, 70, 6], 8: [0, 7, 112, 490, 784, 490, 112, 7],
    9: [0, 8, 168, 1008, 2352, 2352, 1008, 168, 8],
    10: [0, 9, 240, 1890, 6048, 8820, 6048, 1890, 240, 9],
}


def relaxation_corpus():
    pairs = [(construct_wheel(k), rim_mask(k)) for k in range(3, 7)]
    M = k4()
    pairs += [(M, H) for H in circuit_hyperplanes(M)]
    for n in range(3, 10):
        for k in range(2, n):
            pairs.append((direct_sum(construct_uniform(k - 1, k), construct_uniform(1, n - k)), full_mask(k)))
    for spec in random_specs(20, seed=2024, max_n=9):
        M = sparse_paving_from_spec(spec)
        pairs += [(M, H) for H in spec.circuit_hyperplanes]
    return pairs


def test_criterion_1_wheel_whirl_golden_values():
    with criterion(1, "wheel/whirl golden values"):
        W, V = construct_wheel(5), construct_whirl(5)
        assert kl_P(W) == Poly([1, 11, 5])
        assert kl_P(V) == Poly([1, 15, 10])
        assert kl_Z(W) == Poly([1, 21, 80, 80, 21, 1])
        assert kl_Z(V) == Poly([1, 25, 100, 100, 25, 1])


def test_criterion_2_tables():
    with criterion(2, "delta tables p_k, q_k (k<=12) and z_k (k<=10)"):
        for k, row in TABLE_P.items():
            assert delta_p(k) == Poly(row), k
        for k, row in TABLE_Q.items():
            assert delta_q(k) == Poly(row), k
        for k, row in TABLE_Z.items():
            assert delta_z(k) == Poly(row), k


def test_criterion_3_relaxation_identities():
    with criterion(3, "relaxation identities (flats, Tutte, chi, P/Q/Z deltas) on the corpus"):
        pairs = relaxation_corpus()
        failed = [(M.label, H) for M, H in pairs if not verify_relaxation(M, H).passed]
        assert not failed, failed
        assert len(pairs) > 40


def test_criterion_4_closed_form_matches_recursion():
    with criterion(4, "sparse paving closed form equals the lattice recursion"):
        specs = [k4_spec()] + random_specs(20, seed=2024, max_n=9)
        for spec in specs:
            M = sparse_paving_from_spec(spec)
            assert sparse_paving_triple(spec.n, spec.k, spec.lam) == kl_triple(M), spec
        t = kl_triple(k4())
        assert (t.P, t.Q, t.Z) == (Poly([1, 1]), Poly([6, 1]), Poly([1, 7, 7, 1]))


def test_criterion_5_uniform_cross_checks():
    with criterion(5, "uniform closed forms against formulas and recursion"):
        for k in range(1, 31):
            assert uniform_P(k, k + 1) == uniform_P_corank1_formula(k), k
            assert delta_z(k) == delta_z_binomial(k) == delta_z_from_p(k), k
        for n in range(0, 10):
            for k in range(0, n + 1):
                U = construct_uniform(k, n)
                assert uniform_Q(k, n) == kl_Q(U), (k, n)
                assert uniform_Z(k, n) == kl_Z(U), (k, n)


def test_criterion_6_functional_equations():
    with criterion(6, "functional equations for p_k and q_k, 1 <= k <= 30"):
        for k in range(1, 31):
            assert p_equation_residual(k).is_zero(), k
            assert q_equation_residual(k).is_zero(), k


def test_criterion_7_positivity_and_degrees():
    with criterion(7, "delta non-negativity and degrees, k <= 30"):
        for k in range(1, 31):
            p, q, z = delta_p(k), delta_q(k), delta_z(k)
            assert all(c >= 0 for c in p.coeffs + q.coeffs + z.coeffs), k
            assert q.degree == (k - 1) // 2, k
            if k != 2:  # p_2 = 0 has no degree
                assert p.degree == (k - 1) // 2, k
            if k >= 2:
                assert z.degree == k - 1, k


def test_criterion_8_scan_to_25():
    with criterion(8, "sparse paving scan n <= 25, full lambda interval, zero failures"):
        report = scan_sparse_paving(25)
        failures = list(report.failures())
        assert not failures, f"{len(failures)} failing entries, first {failures[:3]}"


@pytest.mark.skipif(os.environ.get("KLRELAX_FULL_SCAN") != "1", reason="set KLRELAX_FULL_SCAN=1 for n <= 30")
def test_criterion_8_scan_to_30():
    with criterion(8, "sparse paving scan n <= 30 (opt-in), full lambda interval, zero failures", part=1):
        report = scan_sparse_paving(30, allow_large=True)
        failures = list(report.failures())
        assert not failures, f"{len(failures)} failing entries, first {failures[:3]}"


def _random_factor(rng):
    kind = rng.randrange(5)
    if kind == 0:
        n = rng.randint(1, 7)
        return construct_uniform(rng.randint(0, n), n)
    if kind == 1:
        v = rng.randint(2, 5)
        return construct_graphic(v, [(rng.randrange(v), rng.randrange(v)) for _ in range(rng.randint(1, 7))])
    if kind == 2:
        n = rng.randint(4, 9)
        return sparse_paving_from_spec(random_sparse_paving_spec(n, rng.randint(2, n - 2), rng))
    if kind == 3:
        return construct_wheel(rng.randint(2, 4))
    n = rng.randint(2, 9)
    return construct_minimal_relaxed(rng.randint(1, n - 1), n)


# keeps the product lattice small enough for a quick exact run
MAX_PRODUCT_FLATS = 3000


def test_criterion_9_structural_properties():
    with criterion(9, "multiplicativity, degree bounds, loops, non-degeneracy"):
        rng = random.Random(99)
        sums = 0
        corpus = []
        while sums < 50:
            M1, M2 = _random_factor(rng), _random_factor(rng)
            if len(flat_lattice(M1)) * len(flat_lattice(M2)) > MAX_PRODUCT_FLATS:
                continue
            t1, t2, t = kl_triple(M1), kl_triple(M2), kl_triple(direct_sum(M1, M2))
            assert t.P == t1.P * t2.P and t.Q == t1.Q * t2.Q and t.Z == t1.Z * t2.Z
            corpus += [M1, M2]
            sums += 1
        corpus += [M for M, _ in relaxation_corpus()]
        corpus += [construct_whirl(k) for k in range(3, 7)]
        loopless = with_loops = free = 0
        for M in corpus:
            t = kl_triple(M)
            if structure(M).loops:
                with_loops += 1
                assert t.P.is_zero() and t.Q.is_zero()
                continue
            loopless += 1
            assert t.P[0] == 1 and 2 * t.P.degree < M.k
            if M.k >= 1 and free_bases(M):
                free += 1
                assert is_nondegenerate(t.P, M.k), M.label
        assert with_loops and loopless and free


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
