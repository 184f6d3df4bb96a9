import io
import json
import random
import warnings

import pytest

from klrelax.analysis import is_log_concave, is_nonnegative, is_real_rooted
from klrelax.closed_forms import lambda_bound, sparse_paving_triple
from klrelax.matroid import k_subsets, popcount
from klrelax.scan import _negative_ranges, cells_up_to, scan_cell, scan_sparse_paving


def test_empty_report():
    r = scan_sparse_paving(1)
    assert r.entry_count() == 0 and list(r.entries()) == []


def test_lambda_range_for_6_3():
    r = scan_sparse_paving(6)
    rows = [e["lambda"] for e in r.entries() if (e["n"], e["k"]) == (6, 3)]
    assert rows == list(range(6))


def test_entry_layout_and_order():
    r = scan_sparse_paving(7)
    rows = list(r.entries())
    keys = [(e["n"], e["k"], e["lambda"]) for e in rows]
    assert keys == sorted(keys)
    assert len(keys) == sum(lambda_bound(n, k) + 1 for n, k in cells_up_to(7))
    assert set(rows[0]) == {"n", "k", "lambda", "p_real_rooted", "z_real_rooted", "q_log_concave", "all_nonnegative"}


@pytest.mark.parametrize("max_n", [10, 14])
def test_interval_method_matches_direct(max_n):
    a = scan_sparse_paving(max_n)
    b = scan_sparse_paving(max_n, method="direct")
    assert [c.failures for c in a.cells] == [c.failures for c in b.cells]


def test_random_cells_agree_with_exact_checks():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(15, 25)
        k = rng.randint(1, n - 1)
        cell = scan_cell(n, k)
        for lam in {0, cell.lam_max, rng.randint(0, cell.lam_max)}:
            t = sparse_paving_triple(n, k, lam)
            fails = {key for key, r in cell.failures.items() if any(lo <= lam <= hi for lo, hi in r)}
            assert ("p_real_rooted" in fails) == (not is_real_rooted(t.P))
            assert ("z_real_rooted" in fails) == (not is_real_rooted(t.Z))
            assert ("q_log_concave" in fails) == (not is_log_concave(t.Q))
            assert ("all_nonnegative" in fails) == (not all(is_nonnegative(p) for p in t.polys()))


def test_negative_ranges_brute_force():
    rng = random.Random(4)
    for _ in range(300):
        c = [rng.randint(-40, 40) for _ in range(3)]
        lo, hi = 0, rng.randint(0, 30)
        want = {x for x in range(lo, hi + 1) if c[0] + c[1] * x + c[2] * x * x < 0}
        got = {x for a, b in _negative_ranges(tuple(c), lo, hi) for x in range(a, b + 1)}
        assert got == want, c


def test_jsonl_and_summary_are_deterministic():
    a, b = scan_sparse_paving(9), scan_sparse_paving(9)
    sa, sb = io.StringIO(), io.StringIO()
    a.write_jsonl(sa)
    b.write_jsonl(sb)
    assert sa.getvalue() == sb.getvalue()
    assert a.summary() == b.summary()
    first = json.loads(sa.getvalue().splitlines()[0])
    assert first["n"] == 2 and first["k"] == 1 and first["lambda"] == 0


def test_parallel_scan_matches_serial():
    a = scan_sparse_paving(12)
    b = scan_sparse_paving(12, jobs=2)
    assert [(c.n, c.k, c.failures) for c in a.cells] == [(c.n, c.k, c.failures) for c in b.cells]


def test_selected_checks_only():
    r = scan_sparse_paving(8, checks=["log-concave"])
    e = next(r.entries())
    assert e["p_real_rooted"] is None and e["q_log_concave"] is True


def test_horizon_guard():
    with pytest.raises(ValueError):
        scan_sparse_paving(26)
    with pytest.raises(ValueError):
        scan_sparse_paving(31, allow_large=True)


def test_only_failure_up_to_25_is_an_unreachable_lambda():
    r = scan_sparse_paving(25)
    assert list(r.failures()) == [{"n": 6, "k": 3, "lambda": 5, "p_real_rooted": True, "z_real_rooted": True,
                                   "q_log_concave": True, "all_nonnegative": False}]
    # no family of five 3-subsets of a 6-set meets pairwise in at most one element
    triples = list(k_subsets(6, 3))
    best = 0

    def grow(start, chosen):
        nonlocal best
        best = max(best, len(chosen))
        for i in range(start, len(triples)):
            if all(popcount(triples[i] & c) <= 1 for c in chosen):
                grow(i + 1, chosen + [triples[i]])

    grow(0, [])
    assert best == 4 < 5
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert sparse_paving_triple(6, 3, 4).P.to_list() == [1, 1]
