"""Kazhdan–Lusztig, inverse Kazhdan–Lusztig and Z-polynomials of matroids.

All three are computed from the lattice of flats.  For a flat F write P_F for
the polynomial of the contraction by F (the upper interval [F, E]) and Q_F
for the inverse polynomial of the restriction to F (the lower interval
[bottom, F]).  One call builds the lattice once and keeps one table of each
per invocation; nothing is cached across calls.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SelfCheckFailed
from .lattice import FlatLattice, flat_lattice, iter_bits
from .matroid import Matroid, structure
from .poly import Poly, reciprocal_transform


@dataclass(frozen=True)
class KLTriple:
    P: Poly
    Q: Poly
    Z: Poly
    k: int
    n: int

    def as_dict(self) -> dict:
        return {"P": self.P.to_list(), "Q": self.Q.to_list(), "Z": self.Z.to_list()}

    def polys(self) -> tuple[Poly, Poly, Poly]:
        return self.P, self.Q, self.Z


def solve_low_degree(R, k: int, sign: int = 1) -> Poly:
    """Find X with deg X < k/2 and ``t^k X(1/t) - X(t) = sign * R(t)``.

    The two sides of the left-hand side have disjoint supports (degrees above
    and below k/2), so ``[t^i] X = sign * [t^(k-i)] R`` for every i < k/2.  The
    remaining coefficients of R must then match exactly; a mismatch means the
    recursion was fed inconsistent data and raises :class:`SelfCheckFailed`.
    """
    R = list(R)
    coeff = lambda d: R[d] if 0 <= d < len(R) else 0  # noqa: E731
    X = Poly([sign * coeff(k - i) for i in range((k + 1) // 2)])
    if reciprocal_transform(X, k) - X != Poly(R) * sign:
        raise SelfCheckFailed(f"no solution of degree < {k}/2 for R={R}")
    return X


# -- list-level helpers (hot loops avoid Poly allocation) --------------------


def _addmul(acc: list, src, scale: int, shift: int = 0) -> None:
    if not scale:
        return
    need = len(src) + shift
    if len(acc) < need:
        acc.extend([0] * (need - len(acc)))
    for d, c in enumerate(src):
        if c:
            acc[d + shift] += scale * c


def _upper_tables(L: FlatLattice, shortcut: bool):
    """P and Z of every contraction, top flat first."""
    from .closed_forms import uniform_P, uniform_Z

    N = len(L)
    P: list = [None] * N
    Z: list = [None] * N
    ranks = L.ranks
    for i in range(N - 1, -1, -1):
        r = L.rank - ranks[i]
        if i == L.top:
            P[i] = Z[i] = (1,)
            continue
        if shortcut:
            shape = L.upper_uniform_shape(i)
            if shape is not None:
                P[i] = uniform_P(*shape).coeffs
                Z[i] = uniform_Z(*shape).coeffs
                continue
        # sum_{G >= i} chi_[i,G] P_G = sum_{h >= i} mu(i,h) Z_h, with the h = i
        # term contributing P_i + (contributions of G > i)
        zrest: list = []
        for g in iter_bits(L.up[i] & ~(1 << i)):
            _addmul(zrest, P[g], 1, ranks[g] - ranks[i])
        R = list(zrest)
        mu = L.mobius_from(i)
        for h, m in mu.items():
            if h != i:
                _addmul(R, Z[h], m)
        p = solve_low_degree(R, r, 1)
        P[i] = p.coeffs
        z = list(zrest)
        _addmul(z, p.coeffs, 1)
        Z[i] = Poly(z).coeffs
    return P, Z


def _lower_tables(L: FlatLattice, shortcut: bool):
    """Q of every restriction, bottom flat first (lattice assumed loopless)."""
    from .closed_forms import uniform_Q

    N = len(L)
    Q: list = [None] * N
    Y: list = [None] * N
    ranks = L.ranks
    for j in range(N):
        rj = ranks[j]
        sj = -1 if rj % 2 else 1
        # Y_j = sum_{F <= j} (-1)^rk F mu(F,j) t^(rk j - rk F) Q_F
        yrest: list = []
        for f in iter_bits(L.down[j] & ~(1 << j)):
            m = L.mobius_from(f)[j]
            _addmul(yrest, Q[f], m if ranks[f] % 2 == 0 else -m, rj - ranks[f])
        if j == L.bottom:
            q = Poly((1,))
        else:
            q = None
            if shortcut:
                shape = L.lower_uniform_shape(j)
                if shape is not None:
                    q = uniform_Q(*shape)
            if q is None:
                S = list(yrest)
                for h in iter_bits(L.down[j] & ~(1 << j)):
                    _addmul(S, Y[h], 1)
                q = solve_low_degree(S, rj, sj)
        Q[j] = q.coeffs
        y = yrest
        _addmul(y, q.coeffs, sj)
        Y[j] = y
    return Q


def _check_P(L: FlatLattice, P, k: int) -> None:
    # t^k P(t^-1) = sum_F chi_{M^F}(t) P_{M_F}(t)
    rhs = Poly()
    for i in range(len(L)):
        rhs = rhs + L.characteristic(L.bottom, i) * Poly(P[i])
    if rhs != reciprocal_transform(Poly(P[L.bottom]), k):
        raise SelfCheckFailed("Kazhdan–Lusztig defining equation does not hold")


def _check_Q(L: FlatLattice, Q, k: int) -> None:
    # (-t)^k Q(t^-1) = sum_F (-1)^rk F Q_{M^F}(t) t^(k - rk F) chi_{M_F}(t^-1)
    rhs = Poly()
    for i in range(len(L)):
        r = L.ranks[i]
        term = Poly(Q[i]) * reciprocal_transform(L.characteristic(i, L.top), k - r)
        rhs = rhs + (term if r % 2 == 0 else -term)
    lhs = reciprocal_transform(Poly(Q[L.top]), k) * (-1) ** k
    if rhs != lhs:
        raise SelfCheckFailed("inverse Kazhdan–Lusztig defining equation does not hold")


def kl_triple(M: Matroid, *, shortcut: bool = False, self_check: bool = True) -> KLTriple:
    """P, Q and Z of ``M`` from one lattice and one table of contraction values.

    ``shortcut=True`` replaces intervals whose lattice is uniform by the closed
    formulas of :mod:`klrelax.closed_forms`; leave it off when the result is
    meant as an independent check of those formulas.
    """
    k, n = M.k, M.n
    if n == 0:
        one = Poly((1,))
        return KLTriple(one, one, one, 0, 0)
    L = flat_lattice(M)
    Ptab, Ztab = _upper_tables(L, shortcut)
    Z = Poly(Ztab[L.bottom])
    if structure(M).loops:
        return KLTriple(Poly(), Poly(), Z, k, n)
    Qtab = _lower_tables(L, shortcut)
    if self_check:
        _check_P(L, Ptab, k)
        _check_Q(L, Qtab, k)
    return KLTriple(Poly(Ptab[L.bottom]), Poly(Qtab[L.top]), Z, k, n)


def kl_P(M: Matroid, **kw) -> Poly:
    """Kazhdan–Lusztig polynomial; 1 for the empty matroid, 0 with loops."""
    k, n = M.k, M.n
    if n == 0:
        return Poly((1,))
    if structure(M).loops:
        return Poly()
    L = flat_lattice(M)
    Ptab, _ = _upper_tables(L, kw.get("shortcut", False))
    if kw.get("self_check", True):
        _check_P(L, Ptab, k)
    return Poly(Ptab[L.bottom])


def kl_Q(M: Matroid, **kw) -> Poly:
    """Inverse Kazhdan–Lusztig polynomial; 1 for the empty matroid, 0 with loops."""
    k, n = M.k, M.n
    if n == 0:
        return Poly((1,))
    if structure(M).loops:
        return Poly()
    L = flat_lattice(M)
    Qtab = _lower_tables(L, kw.get("shortcut", False))
    if kw.get("self_check", True):
        _check_Q(L, Qtab, k)
    return Poly(Qtab[L.top])


def kl_Z(M: Matroid, **kw) -> Poly:
    """``Z_M(t) = sum over flats F of t^rk(F) P_{M_F}(t)``."""
    if M.n == 0:
        return Poly((1,))
    L = flat_lattice(M)
    Ptab, _ = _upper_tables(L, kw.get("shortcut", False))
    Z = Poly()
    for i in range(len(L)):
        Z = Z + Poly(Ptab[i]).shift(L.ranks[i])
    return Z
