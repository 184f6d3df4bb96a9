"""Exact polynomial diagnostics and the relaxation verifier."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .closed_forms import delta_p, delta_q, delta_z
from .errors import NotACircuitHyperplane
from .kl import kl_triple
from .lattice import flat_lattice
from .matroid import Matroid, is_circuit_hyperplane, members, relax, to_mask
from .poly import BiPoly, Poly
from .tutte import TUTTE_MAX_ELEMENTS, characteristic_polynomial, tutte_polynomial


def _integer_primitive(p: Poly) -> Poly:
    """Scale a rational polynomial by a positive factor to a primitive integer one."""
    den = 1
    for c in p.coeffs:
        den = lcm(den, Fraction(c).denominator)
    return Poly([int(Fraction(c) * den) for c in p.coeffs]).primitive()


def _sturm_sequence(f: Poly) -> list[Poly]:
    seq = [f, f.derivative()]
    while seq[-1].degree > 0:
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        # positive rescaling keeps the signs the Sturm count relies on
        seq.append(-_integer_primitive(r))
    return seq


def _sign_changes(signs) -> int:
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def distinct_real_roots(f: Poly) -> int:
    """Number of distinct real roots of a nonzero polynomial (Sturm's theorem)."""
    if f.degree <= 0:
        return 0
    seq = _sturm_sequence(_integer_primitive(f))
    at_plus = [(1 if g.leading() > 0 else -1) for g in seq]
    at_minus = [s * (-1) ** (g.degree % 2) for s, g in zip(at_plus, seq)]
    return _sign_changes(at_minus) - _sign_changes(at_plus)


def square_free_part(f: Poly) -> Poly:
    from .poly import poly_gcd

    g = poly_gcd(f, f.derivative())
    if g.degree <= 0:
        return f
    return _integer_primitive(f // g)


def is_real_rooted(p) -> bool:
    """True iff every complex root of ``p`` is real; decided exactly.

    The zero polynomial and nonzero constants count as real-rooted.
    """
    p = Poly(p)
    coeffs = list(p.coeffs)
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    f = Poly(coeffs)
    if f.degree <= 1:
        return True
    f = square_free_part(f.primitive())
    return distinct_real_roots(f) == f.degree


def is_log_concave(p) -> bool:
    c = list(Poly(p).coeffs)
    return all(c[i] * c[i] >= c[i - 1] * c[i + 1] for i in range(1, len(c) - 1))


def is_nonnegative(p) -> bool:
    return all(c >= 0 for c in Poly(p).coeffs)


def is_nondegenerate(P, k: int) -> bool:
    """``deg P`` attains the largest value allowed for rank k, ``(k-1)//2``."""
    if k < 1:
        raise ValueError("rank must be at least 1")
    return Poly(P).degree == (k - 1) // 2


# -- relaxation verifier -------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class RelaxationReport:
    k: int
    n: int
    hyperplane: list[int]
    checks: list[CheckResult] = field(default_factory=list)
    deltas: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "hyperplane": self.hyperplane,
            "passed": self.passed,
            "checks": {c.name: {"passed": c.passed, "detail": c.detail} for c in self.checks},
            "deltas": {name: d.to_list() for name, d in self.deltas.items()},
        }


def verify_relaxation(M: Matroid, H) -> RelaxationReport:
    """Relax ``H`` and check every identity relating M to its relaxation:
    the flats, the Tutte and characteristic polynomials, and the P/Q/Z deltas."""
    H = to_mask(H) if not isinstance(H, int) else H
    if not is_circuit_hyperplane(M, H):
        raise NotACircuitHyperplane(f"{members(H)} is not a circuit-hyperplane")
    k, n = M.k, M.n
    R = relax(M, H)
    report = RelaxationReport(k, n, members(H))
    add = report.checks.append

    old_flats = set(flat_lattice(M).flats)
    new_flats = set(flat_lattice(R).flats)
    expected = (old_flats - {H}) | {H & ~(1 << e) for e in members(H)}
    add(CheckResult("flats", new_flats == expected,
                    "" if new_flats == expected else f"{len(new_flats ^ expected)} flats differ"))

    if n <= TUTTE_MAX_ELEMENTS:
        diff = tutte_polynomial(R) - tutte_polynomial(M)
        want = BiPoly.from_dict({(1, 1): -1, (1, 0): 1, (0, 1): 1})
        add(CheckResult("tutte", diff == want, "" if diff == want else f"difference {diff.to_list()}"))
    else:
        add(CheckResult("tutte", True, f"skipped: n > {TUTTE_MAX_ELEMENTS}"))

    chi_diff = characteristic_polynomial(R) - characteristic_polynomial(M)
    want_chi = Poly([1, -1]) * (-1) ** k
    add(CheckResult("characteristic", chi_diff == want_chi,
                    "" if chi_diff == want_chi else f"difference {chi_diff.to_list()}"))

    before, after = kl_triple(M), kl_triple(R)
    for name, b, a, d in (("P", before.P, after.P, delta_p(k)),
                          ("Q", before.Q, after.Q, delta_q(k)),
                          ("Z", before.Z, after.Z, delta_z(k))):
        got = a - b
        report.deltas[name] = got
        add(CheckResult(f"delta_{name}", got == d,
                        "" if got == d else f"got {got.to_list()}, expected {d.to_list()}"))
    return report

