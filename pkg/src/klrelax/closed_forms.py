"""Closed formulas: uniform matroids, relaxation deltas, sparse paving triples.

The relaxation deltas ``p_k``, ``q_k``, ``z_k`` are the exact change of P, Q
and Z when one circuit-hyperplane of a rank-k matroid is relaxed.  They depend
on k alone, so they are computed from the smallest examples available,
``U(k-1,k)`` versus ``U(k,k+1)``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import NonIntegralCoefficient, ParameterOutOfRange
from .kl import KLTriple, solve_low_degree
from .poly import ONE, T, Poly, reciprocal_transform


def _check_kn(k: int, n: int) -> None:
    if not 0 <= k <= n:
        raise ParameterOutOfRange(f"need 0 <= k <= n, got k={k}, n={n}")


def _integral(c: Fraction, what: str) -> int:
    if c.denominator != 1:
        raise NonIntegralCoefficient(f"{what} = {c} is not an integer")
    return c.numerator


def uniform_chi(k: int, n: int, *, lattice: bool = False) -> Poly:
    """Characteristic polynomial of ``U(k,n)``.

    With ``lattice=True`` this is the characteristic polynomial of the lattice
    of flats, which for ``k = 0`` is the one-point lattice (value 1) even when
    the matroid has loops; otherwise a matroid with loops gets 0.
    """
    _check_kn(k, n)
    if k == 0:
        return ONE if (lattice or n == 0) else Poly()
    # rank-j flats for j < k are the j-subsets, with mu = (-1)^j
    coeffs = [0] * (k + 1)
    for j in range(k):
        s = (-1) ** j * comb(n, j)
        coeffs[k - j] += s
        coeffs[0] -= s
    return Poly(coeffs)


@lru_cache(maxsize=None)
def uniform_P(k: int, n: int) -> Poly:
    """Kazhdan–Lusztig polynomial of ``U(k,n)`` by the recursion specialised to
    uniform lattices: the j-subsets (j < k) contract to ``U(k-j, n-j)`` and
    restrict to a boolean matroid."""
    _check_kn(k, n)
    if k == 0:
        return ONE if n == 0 else Poly()
    R = uniform_chi(k, n)
    for j in range(1, k):
        R = R + Poly.binomial_power(-1, 1, j) * uniform_P(k - j, n - j) * comb(n, j)
    return solve_low_degree(R, k, 1)


@lru_cache(maxsize=None)
def uniform_Q(k: int, n: int) -> Poly:
    """Inverse Kazhdan–Lusztig polynomial of ``U(k,n)`` (closed formula)."""
    _check_kn(k, n)
    if k == 0:
        return ONE if n == 0 else Poly()
    if k == n:
        # boolean: the j = 0 term of the formula reads 0/0
        return ONE
    coeffs = []
    for j in range((k - 1) // 2 + 1):
        c = Fraction(comb(n, k) * (n - k) * (k - 2 * j) * comb(k, j), (n - k + j) * (n - j))
        coeffs.append(_integral(c, f"[t^{j}]Q_U({k},{n})"))
    return Poly(coeffs)


@lru_cache(maxsize=None)
def uniform_Z(k: int, n: int) -> Poly:
    _check_kn(k, n)
    Z = Poly.monomial(k)
    for j in range(1, k + 1):
        Z = Z + (uniform_P(j, n - k + j) * comb(n, k - j)).shift(k - j)
    return Z


def uniform_triple(k: int, n: int) -> KLTriple:
    return KLTriple(uniform_P(k, n), uniform_Q(k, n), uniform_Z(k, n), k, n)


def uniform_P_corank1_formula(k: int) -> Poly:
    """Coefficient formula for ``P_U(k,k+1)``: (1/(i+1)) C(k-i-1,i) C(k+1,i)."""
    coeffs = []
    for i in range((k - 1) // 2 + 1):
        c = Fraction(comb(k - i - 1, i) * comb(k + 1, i), i + 1)
        coeffs.append(_integral(c, f"[t^{i}]P_U({k},{k + 1})"))
    return Poly(coeffs)


def uniform_Q_corank1_formula(k: int) -> Poly:
    """Coefficient formula for ``Q_U(k,k+1)``: (k+1) C(k,i) (k-2i) / ((i+1)(k+1-i))."""
    coeffs = []
    for i in range((k - 1) // 2 + 1):
        c = Fraction((k + 1) * comb(k, i) * (k - 2 * i), (i + 1) * (k + 1 - i))
        coeffs.append(_integral(c, f"[t^{i}]Q_U({k},{k + 1})"))
    return Poly(coeffs)


# -- relaxation deltas --------------------------------------------------------


def _check_k(k: int) -> None:
    if k < 1:
        raise ParameterOutOfRange(f"deltas are defined for k >= 1, got {k}")


def delta_p(k: int) -> Poly:
    _check_k(k)
    return uniform_P(k, k + 1) - uniform_P(k - 1, k)


def delta_q(k: int) -> Poly:
    _check_k(k)
    return uniform_Q(k, k + 1) - uniform_Q(k - 1, k)


def delta_z(k: int) -> Poly:
    _check_k(k)
    return uniform_Z(k, k + 1) - (ONE + T) * uniform_Z(k - 1, k)


def delta_z_binomial(k: int) -> Poly:
    """``sum_{j=1}^{k-1} (2/k) C(k,j+1) C(k,j-1) t^j``."""
    _check_k(k)
    coeffs = [0]
    for j in range(1, k):
        coeffs.append(_integral(Fraction(2 * comb(k, j + 1) * comb(k, j - 1), k), f"[t^{j}]z_{k}"))
    return Poly(coeffs)


def delta_z_from_p(k: int) -> Poly:
    """``(k-1) t^(k-1) + sum_{j=2}^k C(k,j) t^(k-j) p_j(t)``."""
    _check_k(k)
    z = Poly.monomial(k - 1, k - 1)
    for j in range(2, k + 1):
        z = z + (delta_p(j) * comb(k, j)).shift(k - j)
    return z


@dataclass(frozen=True)
class DeltaSet:
    k: int
    p: Poly
    q: Poly
    z: Poly

    def as_dict(self) -> dict:
        return {"k": self.k, "p": self.p.to_list(), "q": self.q.to_list(), "z": self.z.to_list()}


def delta_set(k: int) -> DeltaSet:
    return DeltaSet(k, delta_p(k), delta_q(k), delta_z(k))


def p_equation_residual(k: int) -> Poly:
    """LHS minus RHS of the rank-only equation pinning down ``p_k``.

    ``chi`` of ``U(k-1,k)`` is taken on its lattice of flats; this only matters
    for k = 1, where ``U(0,1)`` is a loop whose lattice is a single point.
    """
    _check_k(k)
    p = delta_p(k)
    lhs = reciprocal_transform(p, k) - p
    rhs = Poly.binomial_power(-1, 1, k - 1) * k - uniform_chi(k - 1, k, lattice=True)
    rhs = rhs + Poly([1, -1]) * (-1) ** k
    for j in range(2, k):
        rhs = rhs + Poly.binomial_power(-1, 1, k - j) * delta_p(j) * comb(k, j)
    return lhs - rhs


def q_equation_residual(k: int) -> Poly:
    """LHS minus RHS of the rank-only equation pinning down ``q_k``.

    ``Q`` of ``U(k-1,k)`` is again read off its lattice of flats (1 for k = 1).
    """
    _check_k(k)
    q = delta_q(k)
    lhs = reciprocal_transform(q, k) - q
    q_prev = ONE if k == 1 else uniform_Q(k - 1, k)
    inner = Poly.monomial(k - 1) + k - q_prev
    for j in range(2, k):
        inner = inner + Poly.monomial(j - 1, comb(k, j))
    return lhs - Poly([-1, 1]) * inner


# -- sparse paving -------------------------------------------------------------


def lambda_bound(n: int, k: int) -> int:
    """``floor(C(n,k) * min(1/(k+1), 1/(n-k+1)))``."""
    if not 1 <= k <= n:
        raise ParameterOutOfRange(f"need 1 <= k <= n, got k={k}, n={n}")
    bound = Fraction(comb(n, k)) * min(Fraction(1, k + 1), Fraction(1, n - k + 1))
    return bound.numerator // bound.denominator


class LambdaExceedsBound(UserWarning):
    pass


def sparse_paving_triple(n: int, k: int, lam: int) -> KLTriple:
    """P, Q, Z of any sparse paving matroid of rank k on n elements with exactly
    ``lam`` circuit-hyperplanes: the uniform values minus ``lam`` deltas."""
    _check_kn(k, n)
    if lam < 0:
        raise ParameterOutOfRange("lambda must be non-negative")
    if lam == 0:
        return uniform_triple(k, n)
    if k == 0:
        raise ParameterOutOfRange("a rank-0 matroid has no circuit-hyperplanes")
    if lam > lambda_bound(n, k):
        warnings.warn(f"lambda={lam} exceeds the bound {lambda_bound(n, k)} for n={n}, k={k}",
                      LambdaExceedsBound, stacklevel=2)
    return KLTriple(
        uniform_P(k, n) - delta_p(k) * lam,
        uniform_Q(k, n) - delta_q(k) * lam,
        uniform_Z(k, n) - delta_z(k) * lam,
        k,
        n,
    )


def q_sparse_coeff(n: int, k: int, lam: int, j: int) -> int:
    """Coefficient of t^j in Q of a sparse paving matroid, by its explicit formula."""
    _check_kn(k, n)
    if k < 1 or not 0 <= j <= (k - 1) // 2:
        raise ParameterOutOfRange(f"j={j} outside 0..{(k - 1) // 2}")
    if n == k:
        head = Fraction(uniform_Q(k, n)[j])
    else:
        head = Fraction(comb(n, k) * comb(k, j) * (n - k) * (k - 2 * j), (n - k + j) * (n - j))
    bracket = (Fraction(comb(k, j) * (k + 1) * (k - 2 * j), (1 + j) * (k + 1 - j))
               - Fraction(comb(k - 1, j) * k * (k - 1 - 2 * j), (1 + j) * (k - j)))
    return _integral(head - lam * bracket, f"[t^{j}]Q")
