"""Subgroup lattices: all subgroups, their conjugacy classes, and derived data."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from normlab._bits import mask_to_bool, members_of
from normlab.group import FiniteGroup, GroupError, Subgroup, memoized, p_part, prime_divisors

DEFAULT_SUBGROUP_BUDGET = 20000


class LatticeBudgetExceeded(GroupError):
    pass


@dataclass(frozen=True)
class Lattice:
    """All subgroups of ``group`` sorted by (order, member tuple)."""

    group: FiniteGroup
    subgroups: tuple[Subgroup, ...]
    classes: tuple[tuple[int, ...], ...]
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._index.update({H.mask: i for i, H in enumerate(self.subgroups)})

    def __len__(self) -> int:
        return len(self.subgroups)

    def index_of(self, H: Subgroup) -> int:
        return self._index[H.mask]

    def includes(self, i: int, j: int) -> bool:
        """True when subgroup i is contained in subgroup j."""
        return self.subgroups[i] <= self.subgroups[j]

    @property
    def representatives(self) -> tuple[Subgroup, ...]:
        return tuple(self.subgroups[c[0]] for c in self.classes)

    def class_of(self, i: int) -> tuple[int, ...]:
        for c in self.classes:
            if i in c:
                return c
        raise KeyError(i)


def conjugates(G: FiniteGroup, H: Subgroup) -> list[int]:
    """Masks of all conjugates of H, in increasing key order."""
    n = G.order
    members = np.array(H.members)
    imgs = G.conj[:, members]
    rows = np.zeros((n, n), dtype=bool)
    rows[np.arange(n)[:, None], imgs] = True
    packed = np.unique(np.packbits(rows, axis=1, bitorder="little"), axis=0)
    masks = [int.from_bytes(r.tobytes(), "little") for r in packed]
    return sorted(masks, key=lambda m: members_of(m))


def _first_power_in(G: FiniteGroup, xs: np.ndarray, hb: np.ndarray) -> np.ndarray:
    """Smallest k >= 1 with x^k in H, for each x."""
    out = np.zeros(len(xs), dtype=np.int64)
    cur = xs.copy()
    k = 1
    while (out == 0).any():
        hit = hb[cur] & (out == 0)
        out[hit] = k
        cur = G.table[cur, xs]
        k += 1
    return out


class _Builder:
    def __init__(self, G: FiniteGroup, budget: int):
        self.G = G
        self.budget = budget
        self.class_of: dict[int, int] = {}
        self.classes: list[list[int]] = []
        self.queue: list[int] = []

    def add(self, mask: int) -> bool:
        if mask in self.class_of:
            return False
        cid = len(self.classes)
        members = conjugates(self.G, Subgroup(self.G, mask))
        for m in members:
            self.class_of[m] = cid
        self.classes.append(members)
        if len(self.class_of) > self.budget:
            raise LatticeBudgetExceeded(
                f"{self.G.name}: more than {self.budget} subgroups")
        self.queue.append(members[0])
        return True

    def extend_cyclic(self, mask: int) -> None:
        """Add every <H, x> with x normalizing H and xH of prime order."""
        G = self.G
        H = Subgroup(G, mask)
        N = G.normalizer(H)
        hb = mask_to_bool(mask, G.order)
        xs = np.array([x for x in N.members if not hb[x]], dtype=np.int64)
        if xs.size == 0:
            return
        ks = _first_power_in(G, xs, hb)
        produced = 0
        for x, k in zip(xs.tolist(), ks.tolist()):
            if (produced >> x) & 1 or len(prime_divisors(k)) != 1 or prime_divisors(k)[0] != k:
                continue
            K = G._closure_mask(list(H.generators) + [x])
            produced |= K
            self.add(K)

    def supplement(self, mask: int) -> None:
        """Add every <H, x> with x outside N_G(H); reaches perfect subgroups."""
        G = self.G
        H = Subgroup(G, mask)
        N = G.normalizer(H)
        seen: set[int] = set()
        for x in range(G.order):
            if x in N:
                continue
            K = G._closure_mask(list(H.generators) + [x])
            if K not in seen:
                seen.add(K)
                self.add(K)


def _build_lattice(G: FiniteGroup, budget: int) -> Lattice:
    from normlab.classes import is_solvable

    b = _Builder(G, budget)
    b.add(1)
    solvable = is_solvable(G)
    supplemented: set[int] = set()
    while True:
        while b.queue:
            b.extend_cyclic(b.queue.pop(0))
        if solvable:
            break
        reps = [c[0] for c in b.classes if c[0] not in supplemented]
        if not reps:
            break
        for r in reps:
            supplemented.add(r)
            b.supplement(r)
        if not b.queue:
            break
    masks = sorted(b.class_of, key=lambda m: (m.bit_count(), members_of(m)))
    pos = {m: i for i, m in enumerate(masks)}
    classes = sorted(tuple(sorted(pos[m] for m in c)) for c in b.classes)
    subs = tuple(Subgroup(G, m) for m in masks)
    return Lattice(G, subs, tuple(classes))


_LATTICE_KEY = "lattice"


def enumerate_lattice(G: FiniteGroup, budget: int | None = None) -> Lattice:
    """All subgroups by cyclic extension, plus a perfect-subgroup supplement.

    Cyclic extension alone only reaches subgroups with a chain of prime-index
    normal steps down to 1; for non-solvable groups every subgroup
    ``<H, x>`` with x outside N_G(H) is added as well, which makes the
    search reach perfect subgroups (each is generated by a maximal subgroup
    and a non-normalizing element).
    """
    budget = DEFAULT_SUBGROUP_BUDGET if budget is None else budget
    lat = G.cache.get(_LATTICE_KEY)
    if lat is None:
        lat = G.cache.setdefault(_LATTICE_KEY, _build_lattice(G, budget))
    if len(lat) > budget:
        raise LatticeBudgetExceeded(f"{G.name}: {len(lat)} subgroups exceeds budget {budget}")
    return lat


def install_lattice(G: FiniteGroup, lattice: Lattice) -> None:
    """Seed the memo with an externally loaded lattice (used by the cache store)."""
    G.cache.setdefault(_LATTICE_KEY, lattice)


def naive_lattice(G: FiniteGroup) -> list[Subgroup]:
    """Oracle: grow subgroups one generator at a time from the trivial group."""
    found = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for m in frontier:
            H = Subgroup(G, m)
            gens = list(H.generators)
            for x in range(G.order):
                if (m >> x) & 1:
                    continue
                K = G._closure_mask(gens + [x])
                if K not in found:
                    found.add(K)
                    nxt.append(K)
        frontier = nxt
    masks = sorted(found, key=lambda m: (m.bit_count(), members_of(m)))
    return [Subgroup(G, m) for m in masks]


@memoized
def element_classes(G: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    """Conjugacy classes of elements, each sorted, ordered by least member."""
    seen = np.zeros(G.order, dtype=bool)
    out = []
    for x in range(G.order):
        if seen[x]:
            continue
        cls = np.unique(G.conj[:, x])
        seen[cls] = True
        out.append(tuple(int(c) for c in cls))
    return tuple(out)


@memoized
def _normal_subgroups(G: FiniteGroup) -> tuple[Subgroup, ...]:
    found = {1, G.all_mask}
    for cls in element_classes(G):
        found.add(G.normal_closure([cls[0]]).mask)
    changed = True
    while changed:
        changed = False
        cur = sorted(found)
        for i, a in enumerate(cur):
            for b in cur[i + 1:]:
                if a & b in (a, b):
                    continue
                j = G._closure_mask(list(Subgroup(G, a).generators) + list(Subgroup(G, b).generators))
                if j not in found:
                    found.add(j)
                    changed = True
    masks = sorted(found, key=lambda m: (m.bit_count(), members_of(m)))
    return tuple(Subgroup(G, m) for m in masks)


def normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every normal subgroup, from normal closures of elements closed under joins."""
    return list(_normal_subgroups(G))


def minimal_normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    nts = [N for N in _normal_subgroups(G) if not N.is_trivial]
    return [N for N in nts if not any(M < N for M in nts)]


@memoized
def _maximal(G: FiniteGroup) -> tuple[Subgroup, ...]:
    proper = [H for H in enumerate_lattice(G).subgroups if not H.is_whole]
    out = []
    for i, H in enumerate(proper):
        if not any(H < K for K in proper[i + 1:]):
            out.append(H)
    return tuple(out)


def maximal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    return list(_maximal(G))


@memoized
def frattini_subgroup(G: FiniteGroup) -> Subgroup:
    mask = G.all_mask
    for M in _maximal(G):
        mask &= M.mask
    return Subgroup(G, mask)


def is_subnormal(G: FiniteGroup, H: Subgroup) -> bool:
    """H is subnormal iff iterating K -> <H^K> descends all the way to H."""
    K = G.whole
    while True:
        nxt = G.normal_closure(H, within=K)
        if nxt == K:
            return K == H
        K = nxt


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    """The Sylow p-subgroup with least member set (trivial when p does not divide |G|)."""
    return _hall(G, (p,)) if G.order % p == 0 else G.trivial


def hall_subgroup(G: FiniteGroup, primes: Iterable[int]) -> Subgroup | None:
    """A Hall subgroup for the given primes with least member set, or None."""
    return _hall(G, tuple(sorted(set(primes) & set(G.primes))))


@memoized
def _hall(G: FiniteGroup, primes: tuple[int, ...]) -> Subgroup | None:
    target = p_part(G.order, primes)
    if target == 1:
        return G.trivial
    if target == G.order:
        return G.whole
    for H in enumerate_lattice(G).subgroups:
        if H.order == target:
            return H
    return None


def subgroups_of(G: FiniteGroup, H: Subgroup) -> list[Subgroup]:
    return [K for K in enumerate_lattice(G).subgroups if K <= H]


def class_sizes_consistent(lat: Lattice) -> bool:
    """Double counting: each class has size |G : N_G(H)|."""
    G = lat.group
    return all(len(c) == G.normalizer(lat.subgroups[c[0]]).index for c in lat.classes)


__all__ = [
    "DEFAULT_SUBGROUP_BUDGET", "Lattice", "LatticeBudgetExceeded", "class_sizes_consistent",
    "conjugates", "element_classes", "enumerate_lattice", "frattini_subgroup",
    "hall_subgroup", "install_lattice", "is_subnormal", "maximal_subgroups",
    "minimal_normal_subgroups", "naive_lattice", "normal_subgroups", "sylow_subgroup",
]
