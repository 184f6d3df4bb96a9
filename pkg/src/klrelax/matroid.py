"""Matroids given by their bases.

Subsets of the ground set ``{0, ..., n-1}`` are ints used as bit vectors
(bit ``i`` set means element ``i`` is a member); ``n`` is capped at 64.
A :class:`Matroid` stores its bases sorted by bit pattern, so two matroids
compare equal exactly when they have the same ground-set size and the same
bases.  Everything else (rank, closure, flats, circuits, minors) is derived
from the bases on demand.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    ElementOutOfRange,
    EmptyBases,
    ExchangeAxiomViolation,
    GroundSetTooLarge,
    IntersectionTooLarge,
    NotACircuitHyperplane,
    NotAFlat,
    NotAFreeBasis,
    ParameterOutOfRange,
    UnequalBasisSizes,
)

MAX_ELEMENTS = 64
EXHAUSTIVE_PAIR_LIMIT = 5000
RANDOM_EXCHANGE_TRIALS = 100_000


# -- subsets ----------------------------------------------------------------


def to_mask(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        if e < 0:
            raise ElementOutOfRange(f"negative element {e}")
        mask |= 1 << e
    return mask


def members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return mask.bit_count()


def full_mask(n: int) -> int:
    return (1 << n) - 1


def k_subsets(n: int, k: int):
    for combo in combinations(range(n), k):
        yield to_mask(combo)


def _as_mask(A) -> int:
    return A if isinstance(A, int) else to_mask(A)


# -- the matroid type --------------------------------------------------------


@dataclass(frozen=True, eq=True)
class Matroid:
    n: int
    bases: tuple[int, ...]
    label: str | None = field(default=None, compare=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def k(self) -> int:
        return popcount(self.bases[0])

    @property
    def ground(self) -> int:
        return full_mask(self.n)

    def __repr__(self):
        name = self.label or "Matroid"
        return f"<{name}: n={self.n}, k={self.k}, {len(self.bases)} bases>"

    def basis_set(self) -> frozenset[int]:
        s = self._cache.get("basis_set")
        if s is None:
            s = self._cache["basis_set"] = frozenset(self.bases)
        return s

    def bases_as_lists(self) -> list[list[int]]:
        return [members(b) for b in self.bases]

    # rank / closure / independence

    def rank(self, A) -> int:
        A = _as_mask(A)
        best = 0
        for B in self.bases:
            r = (A & B).bit_count()
            if r > best:
                best = r
        return best

    def is_independent(self, A) -> bool:
        A = _as_mask(A)
        return any(A & B == A for B in self.bases)

    def closure(self, A) -> int:
        # e lies outside cl(A) iff some basis meeting A in rank(A) elements contains e
        A = _as_mask(A)
        r = self.rank(A)
        spread = 0
        for B in self.bases:
            if (A & B).bit_count() == r:
                spread |= B
        return self.ground & ~(spread & ~A)

    def is_flat(self, A) -> bool:
        A = _as_mask(A)
        return self.closure(A) == A


def _canonical(n: int, bases: Iterable[int], label=None) -> Matroid:
    return Matroid(n, tuple(sorted(set(bases))), label)


def make_matroid(n: int, bases: Iterable, label: str | None = None, *, exhaustive: bool = False,
                 rng: random.Random | None = None) -> Matroid:
    """Validate a basis family and build a :class:`Matroid`.

    The exchange axiom is checked over all ordered pairs of bases when there are
    at most ``EXHAUSTIVE_PAIR_LIMIT`` of them (or ``exhaustive=True``), and on
    ``RANDOM_EXCHANGE_TRIALS`` random pairs otherwise.
    """
    if n < 0:
        raise ParameterOutOfRange("n must be non-negative")
    if n > MAX_ELEMENTS:
        raise GroundSetTooLarge(f"{n} elements exceeds the cap of {MAX_ELEMENTS}")
    masks = set()
    for B in bases:
        m = _as_mask(B)
        if m >> n:
            raise ElementOutOfRange(f"basis {members(m)} has elements outside range({n})")
        masks.add(m)
    if not masks:
        raise EmptyBases("a matroid needs at least one basis")
    sizes = {popcount(m) for m in masks}
    if len(sizes) != 1:
        raise UnequalBasisSizes(f"bases have sizes {sorted(sizes)}")
    M = _canonical(n, masks, label)
    witness = exchange_violation(M, exhaustive=exhaustive, rng=rng)
    if witness is not None:
        b1, b2, a = witness
        raise ExchangeAxiomViolation(members(b1), members(b2), a)
    return M


def exchange_violation(M: Matroid, *, exhaustive: bool = False, rng: random.Random | None = None):
    """Return a witness ``(B1, B2, a)`` of a failed exchange, or None."""
    bases = M.bases
    bset = M.basis_set()

    def check(b1, b2):
        for a in members(b1 & ~b2):
            drop = b1 & ~(1 << a)
            if not any((drop | (1 << b)) in bset for b in members(b2 & ~b1)):
                return (b1, b2, a)
        return None

    if exhaustive or len(bases) ** 2 <= EXHAUSTIVE_PAIR_LIMIT:
        for b1 in bases:
            for b2 in bases:
                if b1 != b2:
                    w = check(b1, b2)
                    if w:
                        return w
        return None
    rng = rng or random.Random(0)
    for _ in range(RANDOM_EXCHANGE_TRIALS):
        b1, b2 = rng.choice(bases), rng.choice(bases)
        if b1 != b2:
            w = check(b1, b2)
            if w:
                return w
    return None


# -- constructions -----------------------------------------------------------


def construct_uniform(k: int, n: int) -> Matroid:
    if not 0 <= k <= n:
        raise ParameterOutOfRange(f"uniform matroid needs 0 <= k <= n, got k={k}, n={n}")
    if n > MAX_ELEMENTS:
        raise GroundSetTooLarge(f"{n} elements exceeds the cap of {MAX_ELEMENTS}")
    return _canonical(n, k_subsets(n, k), f"U({k},{n})")


def construct_boolean(n: int) -> Matroid:
    M = construct_uniform(n, n)
    return Matroid(M.n, M.bases, f"B({n})")


def construct_graphic(vertex_count: int, edges: Sequence[tuple[int, int]], label=None) -> Matroid:
    """Cycle matroid of a multigraph; element ``i`` is ``edges[i]``.

    Bases are the maximal spanning forests.  They are found by a depth-first
    search that only extends acyclic edge sets and prunes branches that can no
    longer reach full rank.
    """
    for u, v in edges:
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise ElementOutOfRange(f"edge ({u},{v}) outside {vertex_count} vertices")
    m = len(edges)
    if m > MAX_ELEMENTS:
        raise GroundSetTooLarge(f"{m} edges exceeds the cap of {MAX_ELEMENTS}")

    # forest rank = vertices minus connected components
    parent = list(range(vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    target = vertex_count - len({find(x) for x in range(vertex_count)})

    found = []

    def extend(start, chosen, comp):
        if len(chosen) == target:
            found.append(to_mask(chosen))
            return
        if m - start < target - len(chosen):
            return
        for i in range(start, m):
            u, v = edges[i]
            cu, cv = comp[u], comp[v]
            if cu == cv:
                continue
            merged = [cu if c == cv else c for c in comp]
            chosen.append(i)
            extend(i + 1, chosen, merged)
            chosen.pop()

    extend(0, [], list(range(vertex_count)))
    return _canonical(m, found, label)


def wheel_edges(k: int) -> list[tuple[int, int]]:
    """Edges of the k-wheel: spokes are elements 0..k-1, rim edges k..2k-1.

    Rim vertices are 0..k-1 and the hub is vertex k; spoke ``i`` joins the hub to
    rim vertex ``i`` and rim edge ``k + i`` joins ``i`` to ``i + 1 (mod k)``.
    """
    spokes = [(k, i) for i in range(k)]
    rim = [(i, (i + 1) % k) for i in range(k)]
    return spokes + rim


def rim_mask(k: int) -> int:
    return full_mask(2 * k) & ~full_mask(k)


def construct_wheel(k: int) -> Matroid:
    if k < 2:
        raise ParameterOutOfRange("wheels need k >= 2")
    return construct_graphic(k + 1, wheel_edges(k), f"W_{k}")


def construct_whirl(k: int) -> Matroid:
    W = relax(construct_wheel(k), rim_mask(k))
    return Matroid(W.n, W.bases, f"W^{k}")


def direct_sum(M1: Matroid, M2: Matroid) -> Matroid:
    """Disjoint union; the elements of ``M2`` are shifted by ``M1.n``."""
    n = M1.n + M2.n
    if n > MAX_ELEMENTS:
        raise GroundSetTooLarge(f"direct sum would have {n} elements")
    bases = [b1 | (b2 << M1.n) for b1 in M1.bases for b2 in M2.bases]
    label = None
    if M1.label and M2.label:
        label = f"{M1.label}+{M2.label}"
    return _canonical(n, bases, label)


def construct_minimal_relaxed(k: int, n: int) -> Matroid:
    """The relaxation of ``U(k-1,k) + U(1,n-k)`` at the first summand's ground set."""
    if not 1 <= k <= n - 1:
        raise ParameterOutOfRange(f"minimal relaxed matroid needs 1 <= k <= n-1, got k={k}, n={n}")
    M = direct_sum(construct_uniform(k - 1, k), construct_uniform(1, n - k))
    R = relax(M, full_mask(k))
    return Matroid(R.n, R.bases, f"T({k},{n})")


# -- derived structure -------------------------------------------------------


def is_circuit(M: Matroid, A) -> bool:
    A = _as_mask(A)
    if M.is_independent(A):
        return False
    return all(M.is_independent(A & ~(1 << e)) for e in members(A))


def circuits(M: Matroid) -> list[int]:
    """All circuits, sorted by size then bit pattern."""
    cached = M._cache.get("circuits")
    if cached is not None:
        return list(cached)
    found = []
    dependent_known: list[int] = []
    for size in range(1, M.k + 2):
        for combo in combinations(range(M.n), size):
            A = to_mask(combo)
            # a circuit has no smaller circuit inside it
            if any(C & A == C for C in dependent_known):
                continue
            if not M.is_independent(A):
                found.append(A)
        dependent_known = list(found)
    M._cache["circuits"] = tuple(found)
    return found


def is_circuit_hyperplane(M: Matroid, H) -> bool:
    H = _as_mask(H)
    k = M.k
    if popcount(H) != k or k == 0:
        return False
    if M.rank(H) != k - 1 or M.closure(H) != H:
        return False
    return all(M.is_independent(H & ~(1 << e)) for e in members(H))


def circuit_hyperplanes(M: Matroid) -> list[int]:
    """Circuit-hyperplanes: the k-subsets that are dependent, closed, of rank k-1 and
    whose (k-1)-subsets are all independent."""
    if M.k == 0:
        return []
    bset = M.basis_set()
    return [H for H in k_subsets(M.n, M.k) if H not in bset and is_circuit_hyperplane(M, H)]


def relax(M: Matroid, H) -> Matroid:
    H = _as_mask(H)
    if not is_circuit_hyperplane(M, H):
        raise NotACircuitHyperplane(f"{members(H)} is not a circuit-hyperplane")
    return _canonical(M.n, M.bases + (H,))


def is_free_basis(M: Matroid, B) -> bool:
    B = _as_mask(B)
    if len(M.bases) < 2 or B not in M.basis_set():
        return False
    bset = M.basis_set()
    # B + e is a circuit iff every single exchange B - x + e is a basis
    for e in members(M.ground & ~B):
        for x in members(B):
            if (B & ~(1 << x)) | (1 << e) not in bset:
                return False
    return True


def free_bases(M: Matroid) -> list[int]:
    if len(M.bases) < 2:
        return []
    return [B for B in M.bases if is_free_basis(M, B)]


def unrelax(M: Matroid, B) -> Matroid:
    B = _as_mask(B)
    if not is_free_basis(M, B):
        raise NotAFreeBasis(f"{members(B)} is not a free basis")
    return _canonical(M.n, [b for b in M.bases if b != B])


def is_sparse_paving(M: Matroid) -> bool:
    bset = M.basis_set()
    return all(A in bset or is_circuit_hyperplane(M, A) for A in k_subsets(M.n, M.k))


@dataclass(frozen=True)
class SparsePavingSpec:
    n: int
    k: int
    circuit_hyperplanes: tuple[int, ...]

    @property
    def lam(self) -> int:
        return len(self.circuit_hyperplanes)


def make_sparse_paving_spec(n: int, k: int, hyperplanes: Iterable) -> SparsePavingSpec:
    if not 0 <= k <= n:
        raise ParameterOutOfRange(f"need 0 <= k <= n, got k={k}, n={n}")
    if n > MAX_ELEMENTS:
        raise GroundSetTooLarge(f"{n} elements exceeds the cap of {MAX_ELEMENTS}")
    hs = []
    for H in hyperplanes:
        m = _as_mask(H)
        if m >> n:
            raise ElementOutOfRange(f"{members(m)} has elements outside range({n})")
        if popcount(m) != k:
            raise ParameterOutOfRange(f"{members(m)} does not have {k} elements")
        hs.append(m)
    hs = sorted(set(hs))
    for a, b in combinations(hs, 2):
        if popcount(a & b) > k - 2:
            raise IntersectionTooLarge(f"{members(a)} and {members(b)} share {popcount(a & b)} elements")
    return SparsePavingSpec(n, k, tuple(hs))


def sparse_paving_from_spec(spec: SparsePavingSpec) -> Matroid:
    """Bases are all k-subsets that are not listed as circuit-hyperplanes."""
    spec = make_sparse_paving_spec(spec.n, spec.k, spec.circuit_hyperplanes)
    excluded = set(spec.circuit_hyperplanes)
    bases = [A for A in k_subsets(spec.n, spec.k) if A not in excluded]
    if not bases:
        raise EmptyBases("every k-subset was listed as a circuit-hyperplane")
    return _canonical(spec.n, bases)


def random_sparse_paving_spec(n: int, k: int, rng: random.Random, attempts: int | None = None) -> SparsePavingSpec:
    """Greedy random packing of k-subsets with pairwise intersections <= k-2."""
    chosen: list[int] = []
    attempts = attempts if attempts is not None else 3 * n
    pool = list(k_subsets(n, k))
    for _ in range(attempts):
        A = rng.choice(pool)
        if all(popcount(A & B) <= k - 2 for B in chosen):
            chosen.append(A)
    return make_sparse_paving_spec(n, k, chosen)


@dataclass(frozen=True)
class Structure:
    loops: int
    coloops: int
    connected: bool


def structure(M: Matroid) -> Structure:
    union = 0
    inter = M.ground
    for B in M.bases:
        union |= B
        inter &= B
    loops = M.ground & ~union
    return Structure(loops=loops, coloops=inter, connected=_is_connected(M))


def _is_connected(M: Matroid) -> bool:
    # components are those of the fundamental circuits with respect to any one basis
    n = M.n
    if n <= 1:
        return True
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    B = M.bases[0]
    bset = M.basis_set()
    for e in members(M.ground & ~B):
        for x in members(B):
            if (B & ~(1 << x)) | (1 << e) in bset:
                parent[find(x)] = find(e)
    return len({find(x) for x in range(n)}) == 1


def restrict_to(M: Matroid, S) -> Matroid:
    """Restriction (deletion of the complement) to an arbitrary subset, re-indexed."""
    S = _as_mask(S)
    r = M.rank(S)
    idx = members(S)
    bases = set()
    for B in M.bases:
        I = B & S
        if popcount(I) == r:
            bases.add(_reindex(I, idx))
    return _canonical(len(idx), bases)


def contract_set(M: Matroid, S) -> Matroid:
    """Contraction by an arbitrary subset, re-indexed onto the complement."""
    S = _as_mask(S)
    r = M.rank(S)
    rest = members(M.ground & ~S)
    bases = set()
    for B in M.bases:
        if popcount(B & S) == r:
            bases.add(_reindex(B & ~S, rest))
    return _canonical(len(rest), bases)


def _reindex(mask: int, positions: list[int]) -> int:
    out = 0
    for new, old in enumerate(positions):
        if mask >> old & 1:
            out |= 1 << new
    return out


def restriction(M: Matroid, F) -> Matroid:
    F = _as_mask(F)
    if not M.is_flat(F):
        raise NotAFlat(f"{members(F)} is not a flat")
    return restrict_to(M, F)


def contraction(M: Matroid, F) -> Matroid:
    F = _as_mask(F)
    if not M.is_flat(F):
        raise NotAFlat(f"{members(F)} is not a flat")
    return contract_set(M, F)


def simplification(M: Matroid) -> Matroid:
    """Drop loops and keep the smallest element of each parallel class."""
    st = structure(M)
    keep = 0
    covered = st.loops
    for e in range(M.n):
        if covered >> e & 1:
            continue
        keep |= 1 << e
        covered |= M.closure(1 << e)
    return restrict_to(M, keep)
