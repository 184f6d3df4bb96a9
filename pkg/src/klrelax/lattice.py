"""The lattice of flats of a matroid, with Möbius values on its intervals."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .errors import FlatCountOverflow
from .matroid import Matroid, members
from .poly import Poly

DEFAULT_FLAT_CAP = 2**26


def iter_bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass
class FlatLattice:
    """Flats indexed ``0..N-1`` in order of (rank, bit pattern).

    Index 0 is the bottom flat (the loop set) and index ``N-1`` is the ground
    set.  ``covers[i]`` lists the flats covering flat ``i``.  ``up[i]`` and
    ``down[i]`` are bitsets over flat indices (``i`` included).
    """

    n: int
    flats: list[int]
    ranks: list[int]
    covers: list[list[int]]
    up: list[int] = field(repr=False)
    down: list[int] = field(repr=False)
    _mobius: dict = field(default_factory=dict, repr=False)
    _index: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return self.ranks[-1]

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.flats) - 1

    def __len__(self):
        return len(self.flats)

    @property
    def flats_by_rank(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.rank + 1)]
        for F, r in zip(self.flats, self.ranks):
            out[r].append(F)
        return out

    def counts(self) -> tuple[int, ...]:
        """Number of flats of each rank (the Whitney numbers of the second kind)."""
        return tuple(len(level) for level in self.flats_by_rank)

    def index(self, F: int) -> int:
        if not self._index:
            self._index.update((G, i) for i, G in enumerate(self.flats))
        return self._index[F]

    def __contains__(self, F: int) -> bool:
        try:
            self.index(F)
        except KeyError:
            return False
        return True

    def covering_pairs(self) -> list[tuple[int, int]]:
        return [(self.flats[i], self.flats[j]) for i, cs in enumerate(self.covers) for j in cs]

    def mobius_from(self, i: int) -> dict[int, int]:
        """``{j: mu(i, j)}`` for every flat ``j`` above ``i``."""
        mu = self._mobius.get(i)
        if mu is not None:
            return mu
        mu = {}
        up_i = self.up[i]
        for j in iter_bits(up_i):
            if j == i:
                mu[j] = 1
                continue
            s = 0
            for h in iter_bits(up_i & self.down[j] & ~(1 << j)):
                s += mu[h]
            mu[j] = -s
        self._mobius[i] = mu
        return mu

    def mobius(self, i: int, j: int) -> int:
        return self.mobius_from(i).get(j, 0)

    def characteristic(self, i: int, j: int) -> Poly:
        """Characteristic polynomial of the interval ``[i, j]``."""
        if not (self.up[i] >> j) & 1:
            return Poly()
        mu = self.mobius_from(i)
        top = self.ranks[j]
        coeffs = [0] * (top - self.ranks[i] + 1)
        for h in iter_bits(self.up[i] & self.down[j]):
            coeffs[top - self.ranks[h]] += mu[h]
        return Poly(coeffs)

    def upper_uniform_shape(self, i: int):
        """If ``[i, top]`` is the lattice of a simple uniform matroid, return its
        ``(rank, atoms)``; otherwise None.

        A geometric lattice of rank r with m atoms is uniform exactly when it has
        C(m, j) flats of rank j for every j < r.
        """
        base = self.ranks[i]
        r = self.rank - base
        m = len(self.covers[i])
        counts = [0] * (r + 1)
        for j in iter_bits(self.up[i]):
            counts[self.ranks[j] - base] += 1
        if all(counts[j] == comb(m, j) for j in range(r)):
            return r, m
        return None

    def lower_uniform_shape(self, j: int):
        """Same test for the interval ``[bottom, j]``."""
        r = self.ranks[j]
        counts = [0] * (r + 1)
        for h in iter_bits(self.down[j]):
            counts[self.ranks[h]] += 1
        m = counts[1] if r >= 1 else 0
        if all(counts[s] == comb(m, s) for s in range(r)):
            return r, m
        return None


def flat_lattice(M: Matroid, cap: int = DEFAULT_FLAT_CAP) -> FlatLattice:
    """Enumerate flats rank by rank: rank r+1 flats are the closures of F + e
    over rank r flats F and elements e outside F."""
    cached = M._cache.get("lattice")
    if cached is not None and len(cached) <= cap:
        return cached
    ground = M.ground
    level = [M.closure(0)]
    flats: list[int] = []
    ranks: list[int] = []
    cover_masks: list[list[int]] = []
    r = 0
    while level:
        level.sort()
        next_level: dict[int, None] = {}
        for F in level:
            ups = {}
            if F != ground:
                rest = ground & ~F
                while rest:
                    low = rest & -rest
                    rest ^= low
                    G = M.closure(F | low)
                    rest &= ~G
                    ups[G] = None
            flats.append(F)
            ranks.append(r)
            cover_masks.append(list(ups))
            for G in ups:
                next_level[G] = None
            if len(flats) + len(next_level) > cap:
                raise FlatCountOverflow(f"more than {cap} flats")
        level = list(next_level)
        r += 1
    index = {F: i for i, F in enumerate(flats)}
    covers = [sorted(index[G] for G in cs) for cs in cover_masks]
    N = len(flats)
    up = [0] * N
    for i in range(N - 1, -1, -1):
        b = 1 << i
        for c in covers[i]:
            b |= up[c]
        up[i] = b
    down = [0] * N
    for i in range(N):
        down[i] |= 1 << i
        for c in covers[i]:
            down[c] |= down[i]
    L = FlatLattice(M.n, flats, ranks, covers, up, down)
    M._cache["lattice"] = L
    return L


def flat_counts(M: Matroid) -> tuple[int, ...]:
    return flat_lattice(M).counts()


def hyperplanes(M: Matroid) -> list[int]:
    L = flat_lattice(M)
    return [F for F, r in zip(L.flats, L.ranks) if r == L.rank - 1]


def flat_members(L: FlatLattice, i: int) -> list[int]:
    return members(L.flats[i])
