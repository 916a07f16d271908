"""Concrete finite groups on element indices 0..n-1 (index 0 is the identity).

Every group carries a full multiplication table.  Permutation-built groups
also remember their permutation images so elements can be printed in cycle
notation; constructed groups (quotients, products) are table-only.

Groups with identical tables share one memo dictionary, so derived data
(lattices, residuals, centrality verdicts) computed for one copy is reused
by every other copy.
"""

from __future__ import annotations

import functools
import hashlib
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from normlab._bits import bool_to_mask, mask_of, mask_to_bool, members_of

DEFAULT_ORDER_CAP = 2000

_SHARED_CACHES: dict[str, dict] = {}


class GroupError(Exception):
    pass


class OrderCapExceeded(GroupError):
    pass


class InvalidPermutation(GroupError, ValueError):
    pass


class InvalidTable(GroupError, ValueError):
    pass


class NotASubgroup(GroupError):
    pass


class NotNormal(GroupError):
    pass


class InvalidAction(GroupError):
    pass


def clear_caches() -> None:
    """Drop every shared memo (lattices, residuals, ...)."""
    for cache in _SHARED_CACHES.values():
        cache.clear()
    _SHARED_CACHES.clear()


def memoized(fn: Callable) -> Callable:
    """Memoize a function whose first argument is a FiniteGroup, per group content."""
    key_name = f"{fn.__module__}.{fn.__qualname__}"

    @functools.wraps(fn)
    def wrapper(G, *args, **kwargs):
        key = (key_name, args, tuple(sorted(kwargs.items())))
        cache = G.cache
        try:
            return cache[key]
        except KeyError:
            pass
        value = fn(G, *args, **kwargs)
        cache.setdefault(key, value)
        return cache[key]

    return wrapper


def _cycle_string(perm: Sequence[int]) -> str:
    seen = [False] * len(perm)
    parts = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        j = perm[start]
        while j != start:
            cycle.append(j)
            seen[j] = True
            j = perm[j]
        parts.append("(" + " ".join(str(c + 1) for c in cycle) + ")")
    return "".join(parts) or "()"


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``table[a, b]`` is the index of the product ``a*b``.  For permutation
    groups ``a*b`` means "apply a, then b".
    """

    def __init__(
        self,
        table,
        *,
        generators: Sequence[int] | None = None,
        perms: np.ndarray | None = None,
        name: str | None = None,
        components: tuple | None = None,
        check: bool = True,
    ):
        table = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise InvalidTable("multiplication table must be a non-empty square array")
        n = table.shape[0]
        if check:
            if table.min() < 0 or table.max() >= n:
                raise InvalidTable("table entries out of range")
            ar = np.arange(n)
            if not (np.array_equal(table[0], ar) and np.array_equal(table[:, 0], ar)):
                raise InvalidTable("index 0 is not a two-sided identity")
            srt = np.sort(table, axis=1)
            if not (srt == ar).all() or not (np.sort(table, axis=0) == ar[:, None]).all():
                raise InvalidTable("table is not a Latin square")
        table.setflags(write=False)
        self.table = table
        self.order = n
        inv = np.argmax(table == 0, axis=1).astype(np.int32)
        inv.setflags(write=False)
        self.inverse = inv
        digest = hashlib.sha256()
        digest.update(n.to_bytes(8, "little"))
        digest.update(table.tobytes())
        self.id = digest.hexdigest()[:16]
        self.cache = _SHARED_CACHES.setdefault(self.id, {})
        self.perms = perms
        self.name = name or f"G{n}_{self.id[:6]}"
        self.components = components
        if generators is None:
            generators = self._greedy_generators(range(n))
        seen = []
        for g in generators:
            g = int(g)
            if g != 0 and g not in seen:
                seen.append(g)
        self.generator_indices = tuple(seen)

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name} order={self.order} id={self.id}>"

    def __len__(self) -> int:
        return self.order

    @property
    def degree(self) -> int | None:
        return None if self.perms is None else self.perms.shape[1]

    @property
    def all_mask(self) -> int:
        return (1 << self.order) - 1

    # -- elements ---------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, a: int, k: int) -> int:
        r = 0
        for _ in range(k % self.element_orders[a]):
            r = int(self.table[r, a])
        return r

    @functools.cached_property
    def conj(self) -> np.ndarray:
        """``conj[g, x] = g^-1 x g``."""
        n = self.order
        left = self.table[self.inverse]
        c = self.table[left, np.arange(n)[:, None]]
        c.setflags(write=False)
        return c

    @functools.cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        orders[0] = 1
        cur = np.arange(n)
        ar = np.arange(n)
        k = 1
        while (orders == 0).any():
            cur = self.table[cur, ar]
            k += 1
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
        orders.setflags(write=False)
        return orders

    @functools.cached_property
    def primes(self) -> tuple[int, ...]:
        """pi(G), the prime divisors of the order."""
        return prime_divisors(self.order)

    def label(self, i: int) -> str:
        if self.perms is not None:
            return _cycle_string(self.perms[i])
        return self.word(i)

    def word(self, i: int) -> str:
        parent = self._bfs_tree
        if i == 0:
            return "e"
        letters = []
        while i != 0:
            i, g = parent[i]
            letters.append(f"g{self.generator_indices.index(g) + 1}")
        return "*".join(reversed(letters))

    @functools.cached_property
    def _bfs_tree(self) -> dict[int, tuple[int, int]]:
        parent: dict[int, tuple[int, int]] = {}
        seen = {0}
        queue = deque([0])
        while queue:
            a = queue.popleft()
            for g in self.generator_indices:
                b = int(self.table[a, g])
                if b not in seen:
                    seen.add(b)
                    parent[b] = (a, g)
                    queue.append(b)
        return parent

    @functools.cached_property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def verify_axioms(self) -> None:
        """Exhaustive associativity / identity / inverse check (O(n^3))."""
        T = self.table
        n = self.order
        ar = np.arange(n)
        if not (np.array_equal(T[0], ar) and np.array_equal(T[:, 0], ar)):
            raise InvalidTable("identity")
        if not (T[ar, self.inverse] == 0).all() or not (T[self.inverse, ar] == 0).all():
            raise InvalidTable("inverse")
        step = max(1, 4_000_000 // (n * n))
        for start in range(0, n, step):
            a = ar[start:start + step]
            left = T[T[a]]  # (a, b, c) -> (ab)c
            right = T[a[:, None, None], T[None, :, :]]  # a(bc)
            if not np.array_equal(left, right):
                raise InvalidTable("associativity")

    # -- subgroups --------------------------------------------------------

    def sub(self, mask: int) -> "Subgroup":
        return Subgroup(self, mask)

    @property
    def whole(self) -> "Subgroup":
        return Subgroup(self, self.all_mask)

    @property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, 1)

    def _closure_mask(self, gens: Iterable[int]) -> int:
        gens = sorted({int(g) for g in gens} - {0})
        visited = np.zeros(self.order, dtype=bool)
        visited[0] = True
        if not gens:
            return 1
        frontier = np.array([0])
        g = np.array(gens)
        while frontier.size:
            prod = self.table[np.ix_(frontier, g)].ravel()
            new = np.unique(prod[~visited[prod]])
            visited[new] = True
            frontier = new
        return bool_to_mask(visited)

    def _greedy_generators(self, elements: Iterable[int]) -> tuple[int, ...]:
        gens: list[int] = []
        current = 1
        for e in elements:
            if not (current >> e) & 1:
                gens.append(int(e))
                current = self._closure_mask(gens)
        return tuple(gens)

    def closure(self, seed: Iterable[int] | int | "Subgroup" = ()) -> "Subgroup":
        """Smallest subgroup containing ``seed`` (indices, a mask, or a Subgroup)."""
        if isinstance(seed, Subgroup):
            seed = seed.generators
        elif isinstance(seed, int):
            seed = members_of(seed)
        seed = [int(s) for s in seed]
        for s in seed:
            if not 0 <= s < self.order:
                raise IndexError(f"element index {s} out of range")
        return Subgroup(self, self._closure_mask(seed))

    def join(self, *subs: "Subgroup") -> "Subgroup":
        gens: list[int] = []
        for H in subs:
            gens.extend(H.generators)
        return Subgroup(self, self._closure_mask(gens))

    def as_subgroup(self, S) -> "Subgroup":
        """Coerce a Subgroup / mask / index collection, checking closure."""
        if isinstance(S, Subgroup):
            return S
        mask = S if isinstance(S, int) else mask_of(S)
        if self._closure_mask(members_of(mask)) != mask:
            raise NotASubgroup("element set is not closed under multiplication")
        return Subgroup(self, mask)

    def _elements(self, S) -> np.ndarray:
        if isinstance(S, Subgroup):
            return np.array(S.generators or (0,))
        if isinstance(S, int):
            return np.array(members_of(S) or (0,))
        return np.array(sorted(set(int(s) for s in S)) or [0])

    def centralizer(self, S=None) -> "Subgroup":
        """C_G(S) for a subgroup or an element set (whole group if S is None)."""
        s = np.arange(self.order) if S is None else self._elements(S)
        T = self.table
        ok = (T[:, s] == T[s, :].T).all(axis=1)
        return Subgroup(self, bool_to_mask(ok))

    def center(self) -> "Subgroup":
        return _center(self)

    def normalizer(self, H) -> "Subgroup":
        H = self.as_subgroup(H)
        return _normalizer(self, H)

    def conjugate(self, H: "Subgroup", g: int) -> "Subgroup":
        """H^g = g^-1 H g."""
        return Subgroup(self, mask_of(self.conj[g, list(H.members)]))

    def core(self, H: "Subgroup") -> "Subgroup":
        hb = mask_to_bool(H.mask, self.order)
        ok = hb[self.conj].all(axis=0)
        return Subgroup(self, bool_to_mask(ok))

    def normal_closure(self, S, within: "Subgroup | None" = None) -> "Subgroup":
        """Smallest subgroup containing S normalized by ``within`` (default G)."""
        s = self._elements(S)
        if within is None:
            rows = self.conj[:, s]
        else:
            rows = self.conj[np.array(within.members)][:, s]
        return Subgroup(self, self._closure_mask(np.unique(rows)))

    def commutator_subgroup(self, A: "Subgroup", B: "Subgroup") -> "Subgroup":
        a = np.array(A.members)
        b = np.array(B.members)
        T, inv = self.table, self.inverse
        comm = T[T[np.ix_(inv[a], inv[b])], T[np.ix_(a, b)]]
        return Subgroup(self, self._closure_mask(np.unique(comm)))

    def derived_subgroup(self) -> "Subgroup":
        return self.commutator_subgroup(self.whole, self.whole)

    def derived_series(self) -> list["Subgroup"]:
        return list(_derived_series(self))

    def lower_central_series(self) -> list["Subgroup"]:
        return list(_lower_central_series(self))

    def upper_central_series(self) -> list["Subgroup"]:
        return list(_upper_central_series(self))

    def is_normal(self, H: "Subgroup") -> bool:
        hb = mask_to_bool(H.mask, self.order)
        gens = np.array(H.generators or (0,))
        return bool(hb[self.conj[np.array(self.generator_indices or (0,))][:, gens]].all())

    def elements_of_order(self, predicate: Callable[[int], bool]) -> list[int]:
        return [i for i, o in enumerate(self.element_orders) if predicate(int(o))]

    # -- derived groups ---------------------------------------------------

    def quotient(self, N: "Subgroup") -> tuple["FiniteGroup", "HomomorphismWitness"]:
        return _quotient(self, N)

    def subgroup_as_group(self, H: "Subgroup") -> tuple["FiniteGroup", np.ndarray]:
        """H as a group in its own right, plus the embedding (new index -> index in G)."""
        return _subgroup_as_group(self, H)


class Subgroup:
    """A subgroup of a FiniteGroup stored as a bitset of element indices."""

    __slots__ = ("group", "mask", "__dict__")

    def __init__(self, group: FiniteGroup, mask: int):
        self.group = group
        self.mask = mask

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.mask == other.mask
            and self.group.id == other.group.id
        )

    def __hash__(self) -> int:
        return hash((self.group.id, self.mask))

    def __repr__(self) -> str:
        return f"<Subgroup of {self.group.name} order={self.order}>"

    def __contains__(self, g: int) -> bool:
        return bool((self.mask >> int(g)) & 1)

    def __le__(self, other: "Subgroup") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.mask != other.mask

    def __ge__(self, other: "Subgroup") -> bool:
        return other <= self

    def __gt__(self, other: "Subgroup") -> bool:
        return other < self

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.group, self.mask & other.mask)

    @functools.cached_property
    def order(self) -> int:
        return self.mask.bit_count()

    @functools.cached_property
    def members(self) -> tuple[int, ...]:
        return members_of(self.mask)

    @functools.cached_property
    def key(self) -> tuple:
        return (self.order, self.members)

    @functools.cached_property
    def generators(self) -> tuple[int, ...]:
        return self.group._greedy_generators(self.members)

    @property
    def index(self) -> int:
        return self.group.order // self.order

    @property
    def is_trivial(self) -> bool:
        return self.mask == 1

    @property
    def is_whole(self) -> bool:
        return self.mask == self.group.all_mask

    @functools.cached_property
    def is_normal(self) -> bool:
        return self.group.is_normal(self)

    @functools.cached_property
    def is_subnormal(self) -> bool:
        from normlab.lattice import is_subnormal

        return is_subnormal(self.group, self)

    def join(self, other: "Subgroup") -> "Subgroup":
        return self.group.join(self, other)

    def product(self, other: "Subgroup") -> "Subgroup":
        """The subgroup HK; requires one of the two to be normal."""
        if not (self.is_normal or other.is_normal):
            raise NotNormal("product of subgroups needs a normal factor")
        return self.join(other)

    def as_group(self) -> tuple[FiniteGroup, np.ndarray]:
        return self.group.subgroup_as_group(self)


@dataclass(frozen=True)
class HomomorphismWitness:
    """A total map of element indices from ``source`` to ``target``."""

    source: FiniteGroup
    target: FiniteGroup
    image_of: np.ndarray

    def __call__(self, g: int) -> int:
        return int(self.image_of[g])

    def image(self, H: Subgroup) -> Subgroup:
        return Subgroup(self.target, mask_of(np.unique(self.image_of[list(H.members)])))

    def preimage(self, K: Subgroup) -> Subgroup:
        kb = mask_to_bool(K.mask, self.target.order)
        return Subgroup(self.source, bool_to_mask(kb[self.image_of]))

    def kernel(self) -> Subgroup:
        return self.preimage(self.target.trivial)

    def verify(self) -> bool:
        img = self.image_of
        S, T = self.source.table, self.target.table
        if img[0] != 0:
            return False
        return bool((img[S] == T[img[:, None], img[None, :]]).all())


# -- memoized kernels -------------------------------------------------------


@memoized
def _center(G: FiniteGroup) -> Subgroup:
    return G.centralizer(G.generator_indices)


@memoized
def _normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    hb = mask_to_bool(H.mask, G.order)
    gens = np.array(H.generators or (0,))
    ok = hb[G.conj[:, gens]].all(axis=1)
    return Subgroup(G, bool_to_mask(ok))


@memoized
def _derived_series(G: FiniteGroup) -> tuple[Subgroup, ...]:
    series = [G.whole]
    while True:
        D = G.commutator_subgroup(series[-1], series[-1])
        if D == series[-1]:
            return tuple(series)
        series.append(D)


@memoized
def _lower_central_series(G: FiniteGroup) -> tuple[Subgroup, ...]:
    series = [G.whole]
    while True:
        D = G.commutator_subgroup(series[-1], G.whole)
        if D == series[-1]:
            return tuple(series)
        series.append(D)


@memoized
def _upper_central_series(G: FiniteGroup) -> tuple[Subgroup, ...]:
    T, inv = G.table, G.inverse
    gens = np.array(G.generator_indices or (0,))
    ar = np.arange(G.order)
    series = [G.trivial]
    while True:
        zb = mask_to_bool(series[-1].mask, G.order)
        # [g, x] = g^-1 x^-1 g x for every g and generator x
        comm = T[T[np.ix_(inv[ar], inv[gens])], T[np.ix_(ar, gens)]]
        nxt = Subgroup(G, bool_to_mask(zb[comm].all(axis=1)))
        if nxt == series[-1]:
            return tuple(series)
        series.append(nxt)


@memoized
def _quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, HomomorphismWitness]:
    if not N.is_normal:
        raise NotNormal(f"subgroup of order {N.order} is not normal in {G.name}")
    n = G.order
    cid = np.full(n, -1, dtype=np.int32)
    nm = np.array(N.members)
    reps = []
    for g in range(n):
        if cid[g] < 0:
            cid[G.table[g, nm]] = len(reps)
            reps.append(g)
    r = np.array(reps)
    table = cid[G.table[np.ix_(r, r)]]
    gens = [int(cid[g]) for g in G.generator_indices]
    name = G.name if N.is_trivial else f"{G.name}/N{N.order}"
    Q = FiniteGroup(table, generators=gens, name=name, check=False)
    return Q, HomomorphismWitness(G, Q, cid)


@memoized
def _subgroup_as_group(G: FiniteGroup, H: Subgroup) -> tuple[FiniteGroup, np.ndarray]:
    m = np.array(H.members)
    pos = np.full(G.order, -1, dtype=np.int32)
    pos[m] = np.arange(len(m))
    table = pos[G.table[np.ix_(m, m)]]
    perms = None if G.perms is None else G.perms[m]
    gens = [int(pos[g]) for g in H.generators]
    name = G.name if H.is_whole else f"{G.name}>H{H.order}"
    K = FiniteGroup(table, generators=gens, perms=perms, name=name, check=False)
    m.setflags(write=False)
    return K, m


# -- constructors -----------------------------------------------------------


def prime_divisors(n: int) -> tuple[int, ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def p_part(n: int, primes) -> int:
    """Largest divisor of n whose prime factors all lie in ``primes``."""
    r = 1
    for p in prime_divisors(n):
        if p in primes:
            while n % p == 0:
                n //= p
                r *= p
    return r


def build_from_permutations(
    degree: int,
    generators: Sequence[Sequence[int]],
    *,
    cap: int = DEFAULT_ORDER_CAP,
    name: str | None = None,
) -> FiniteGroup:
    """Group generated by 0-based image lists, enumerated by breadth-first closure."""
    gens = []
    for g in generators:
        g = tuple(int(x) for x in g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise InvalidPermutation(f"{list(g)} is not a bijection on {degree} points")
        gens.append(g)
    identity = tuple(range(degree))
    elements = [identity]
    index = {identity: 0}
    head = 0
    while head < len(elements):
        a = elements[head]
        head += 1
        for g in gens:
            prod = tuple(g[x] for x in a)
            if prod not in index:
                index[prod] = len(elements)
                elements.append(prod)
                if len(elements) > cap:
                    raise OrderCapExceeded(f"closure exceeds order cap {cap}")
    n = len(elements)
    P = np.array(elements, dtype=np.int64).reshape(n, degree)
    table = np.empty((n, n), dtype=np.int32)
    if degree == 0:
        table[:] = 0
    elif degree <= 15:
        weights = degree ** np.arange(degree, dtype=np.int64)
        codes = P @ weights
        order = np.argsort(codes)
        sorted_codes = codes[order]
        for a in range(n):
            rows = P[:, P[a]]  # (a*b)[i] = b[a[i]]
            table[a] = order[np.searchsorted(sorted_codes, rows @ weights)]
    else:
        for a in range(n):
            rows = P[:, P[a]]
            table[a] = [index[tuple(r)] for r in rows.tolist()]
    gen_idx = [index[g] for g in gens]
    return FiniteGroup(table, generators=gen_idx, perms=P.astype(np.int32), name=name, check=False)


def from_table(table, *, name: str | None = None, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Validated table-backed group; checks axioms exhaustively up to order 200."""
    arr = np.asarray(table)
    if arr.ndim != 2 or arr.shape[0] > cap:
        if arr.ndim == 2:
            raise OrderCapExceeded(f"order {arr.shape[0]} exceeds cap {cap}")
        raise InvalidTable("table must be two-dimensional")
    G = FiniteGroup(arr, name=name)
    if G.order <= 200:
        G.verify_axioms()
    return G


def direct_product(G1: FiniteGroup, G2: FiniteGroup, *, name: str | None = None,
                   cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """G1 x G2 on pairs (a, b) -> a*|G2| + b."""
    n1, n2 = G1.order, G2.order
    if n1 * n2 > cap:
        raise OrderCapExceeded(f"order {n1 * n2} exceeds cap {cap}")
    T = (G1.table[:, None, :, None].astype(np.int64) * n2
         + G2.table[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    emb1 = np.arange(n1, dtype=np.int32) * n2
    emb2 = np.arange(n2, dtype=np.int32)
    gens = [int(emb1[g]) for g in G1.generator_indices] + [int(emb2[g]) for g in G2.generator_indices]
    return FiniteGroup(T, generators=gens, name=name or f"{G1.name}x{G2.name}",
                       components=((G1, emb1), (G2, emb2)), check=False)


def _action_array(N: FiniteGroup, H: FiniteGroup, action) -> np.ndarray:
    if callable(action):
        rows = [np.asarray(action(h)) for h in range(H.order)]
        return np.array(rows, dtype=np.int32).reshape(H.order, N.order)
    arr = np.asarray(action, dtype=np.int32)
    if arr.shape != (H.order, N.order):
        raise InvalidAction("action must give one automorphism of N per element of H")
    return arr


def validate_action(N: FiniteGroup, H: FiniteGroup, phi: np.ndarray) -> None:
    TN = N.table
    ar = np.arange(N.order)
    if not np.array_equal(phi[0], ar):
        raise InvalidAction("identity of H must act trivially")
    for h in range(H.order):
        f = phi[h]
        if not np.array_equal(np.sort(f), ar):
            raise InvalidAction(f"image of H-element {h} is not a bijection of N")
        if not (f[TN] == TN[f[:, None], f[None, :]]).all():
            raise InvalidAction(f"image of H-element {h} is not an automorphism of N")
    for g in H.generator_indices:
        # phi(g h) = phi(g) o phi(h) for every h, which forces a homomorphism
        lhs = phi[H.table[g]]
        rhs = phi[g][phi]
        if not np.array_equal(lhs, rhs):
            raise InvalidAction("action does not respect the product of H")


def semidirect_product(N: FiniteGroup, H: FiniteGroup, action, *, name: str | None = None,
                       cap: int = DEFAULT_ORDER_CAP, validate: bool = True) -> FiniteGroup:
    """N x| H with (n1, h1)(n2, h2) = (n1 * phi_h1(n2), h1 h2).

    ``action`` maps an H-index to the automorphism of N (as an image array),
    either as a callable or as an |H| x |N| array.  Pairs are indexed
    lexicographically, so a trivial action reproduces ``direct_product``.
    """
    nN, nH = N.order, H.order
    if nN * nH > cap:
        raise OrderCapExceeded(f"order {nN * nH} exceeds cap {cap}")
    phi = _action_array(N, H, action)
    if validate:
        validate_action(N, H, phi)
    npart = N.table[np.arange(nN)[:, None, None], phi[None, :, :]].astype(np.int64)
    T = (npart[:, :, :, None] * nH + H.table[None, :, None, :]).reshape(nN * nH, nN * nH)
    gens = [int(g) * nH for g in N.generator_indices] + [int(h) for h in H.generator_indices]
    return FiniteGroup(T, generators=gens, name=name or f"{N.name}:{H.name}", check=False)


def is_quaternion_Q8(G: FiniteGroup) -> bool:
    """Order 8, nonabelian, with a unique involution."""
    if G.order != 8 or G.is_abelian:
        return False
    return int((G.element_orders == 2).sum()) == 1
