"""Chief series, F-centrality of chief factors, hypercentres and p-series."""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from normlab._bits import bool_to_mask, mask_to_bool
from normlab.classes import (
    ClassExpr,
    NILPOTENT,
    PrimeSet,
    _ps,
    canonical_local,
    fitting_length_or_none,
    flags,
    is_member,
    o_pi,
    radical,
)
from normlab.group import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    GroupError,
    Subgroup,
    is_quaternion_Q8,
    memoized,
    prime_divisors,
    semidirect_product,
)
from normlab.lattice import enumerate_lattice, normal_subgroups, sylow_subgroup


class SeriesError(GroupError):
    pass


class InvalidFactor(SeriesError):
    pass


class HypercentreJoinFailure(SeriesError):
    pass


class NotPiSolvable(SeriesError):
    pass


@dataclass(frozen=True)
class ChiefFactor:
    lower: Subgroup
    upper: Subgroup
    centralizer: Subgroup

    @property
    def order(self) -> int:
        return self.upper.order // self.lower.order

    @property
    def primes(self) -> tuple[int, ...]:
        return prime_divisors(self.order)

    @property
    def is_abelian(self) -> bool:
        return len(self.primes) == 1


@dataclass(frozen=True)
class ChiefSeries:
    group: FiniteGroup
    terms: tuple[Subgroup, ...]
    factors: tuple[ChiefFactor, ...]

    @property
    def top(self) -> Subgroup:
        return self.terms[-1]

    @property
    def factor_orders(self) -> tuple[int, ...]:
        return tuple(f.order for f in self.factors)


@dataclass(frozen=True)
class CentralityVerdict:
    """Outcome of an F-centrality test on one chief factor.

    ``route`` records how ``semidirect_result`` was decided: ``semidirect``
    (explicit product), ``subdirect`` (nonabelian factor, see
    ``is_F_central``) or ``orders`` (membership fixed by orders alone).
    """

    order: int
    semidirect_result: bool
    local_result: bool | None
    route: str

    @property
    def agree(self) -> bool | None:
        if self.local_result is None:
            return None
        return self.semidirect_result == self.local_result


def factor_centralizer(G: FiniteGroup, L: Subgroup, K: Subgroup) -> Subgroup:
    """C_G(L/K) = {g : l^-1 l^g in K for every l in L}."""
    gens = np.array(L.generators or (0,))
    kb = mask_to_bool(K.mask, G.order)
    comm = G.table[G.inverse[gens][None, :], G.conj[:, gens]]
    return Subgroup(G, bool_to_mask(kb[comm].all(axis=1)))


def _normals_between(G: FiniteGroup, K: Subgroup, L: Subgroup) -> list[Subgroup]:
    return [M for M in normal_subgroups(G) if K < M < L]


def chief_series(G: FiniteGroup, top: Subgroup | None = None,
                 rng: random.Random | None = None) -> ChiefSeries:
    """A G-chief series 1 = N_0 < ... < N_k = top, built bottom up.

    At each step the least-key minimal choice is taken; passing ``rng``
    picks uniformly among the minimal choices instead (used to test that
    results do not depend on the series).
    """
    top = G.whole if top is None else top
    if not top.is_normal:
        raise InvalidFactor("top of a chief series must be normal")
    norms = [M for M in normal_subgroups(G) if M <= top]
    terms = [G.trivial]
    while terms[-1] != top:
        N = terms[-1]
        above = [M for M in norms if N < M]
        minimal = [M for M in above if not any(X < M for X in above)]
        terms.append(rng.choice(minimal) if rng is not None else minimal[0])
    factors = tuple(ChiefFactor(terms[i], terms[i + 1], factor_centralizer(G, terms[i + 1], terms[i]))
                    for i in range(len(terms) - 1))
    return ChiefSeries(G, tuple(terms), factors)


def factor_action_product(G: FiniteGroup, L: Subgroup, K: Subgroup,
                          cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """(L/K) x| (G/C_G(L/K)) with gC acting by lK -> g l g^-1 K."""
    C = factor_centralizer(G, L, K)
    LG, emb = G.subgroup_as_group(L)
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[emb] = np.arange(len(emb))
    K_in_L = Subgroup(LG, sum(1 << int(pos[k]) for k in K.members))
    V, proj_v = LG.quotient(K_in_L)
    Q, proj_q = G.quotient(C)
    # representatives: least element of each coset
    v_rep = np.full(V.order, -1, dtype=np.int64)
    for i in range(LG.order - 1, -1, -1):
        v_rep[proj_v.image_of[i]] = emb[i]
    q_rep = np.full(Q.order, -1, dtype=np.int64)
    for g in range(G.order - 1, -1, -1):
        q_rep[proj_q.image_of[g]] = g
    phi = np.empty((Q.order, V.order), dtype=np.int32)
    for h in range(Q.order):
        g = int(q_rep[h])
        ginv = int(G.inverse[g])
        images = G.conj[ginv, v_rep]  # g l g^-1
        phi[h] = proj_v.image_of[pos[images]]
    return semidirect_product(V, Q, phi, cap=cap, name=f"{G.name}[{L.order}/{K.order}]")


def _is_chief(G: FiniteGroup, L: Subgroup, K: Subgroup) -> bool:
    return K < L and K.is_normal and L.is_normal and not _normals_between(G, K, L)


@memoized
def is_F_central(G: FiniteGroup, L: Subgroup, K: Subgroup, F: ClassExpr) -> CentralityVerdict:
    """Decide whether the chief factor L/K is F-central in G.

    Abelian factors: the product (L/K) x| (G/C) is built and tested.
    Nonabelian factors: (l, gC) -> (lgC, gC) embeds that product in
    (G/C) x (G/C) as a subdirect product, so for a formation F it lies in F
    exactly when G/C does; this avoids building groups of order |L/K|*|G/C|.
    The local route (G/C in F(p)) runs for abelian p-factors whenever a
    canonical local definition is registered.
    """
    if not _is_chief(G, L, K):
        raise InvalidFactor(f"{L.order}/{K.order} is not a chief factor of {G.name}")
    order = L.order // K.order
    ps = prime_divisors(order)
    C = factor_centralizer(G, L, K)
    Q = G.quotient(C)[0]
    if len(ps) > 1:
        return CentralityVerdict(order, is_member(Q, F), None, "subdirect")
    p = ps[0]
    local = canonical_local(F, p)
    local_result = None
    if local is False:
        local_result = False
    elif local is not None:
        local_result = is_member(Q, local)
    if order * Q.order > DEFAULT_ORDER_CAP and local_result is not None:
        return CentralityVerdict(order, local_result, local_result, "local")
    S = factor_action_product(G, L, K, cap=max(DEFAULT_ORDER_CAP, order * Q.order))
    return CentralityVerdict(order, is_member(S, F), local_result, "semidirect")


def _constrained(order: int, pi: PrimeSet) -> bool:
    return any(p in pi for p in prime_divisors(order))


@memoized
def _hypercentral_map(G: FiniteGroup, pi: PrimeSet, F: ClassExpr) -> dict[int, bool]:
    norms = normal_subgroups(G)
    ok: dict[int, bool] = {}
    for N in norms:
        if N.is_trivial:
            ok[N.mask] = True
            continue
        below = [M for M in norms if M < N]
        maximal = [M for M in below if not any(M < X for X in below)]
        M = maximal[0]
        good = ok[M.mask]
        if good and _constrained(N.order // M.order, pi):
            good = is_F_central(G, N, M, F).semidirect_result
        ok[N.mask] = good
    return ok


def is_hypercentral(G: FiniteGroup, N: Subgroup, pi, F: ClassExpr) -> bool:
    """Every G-chief factor below N whose order meets pi is F-central."""
    return _hypercentral_map(G, _ps(pi), F)[N.mask]


def is_hypercentral_via_series(G: FiniteGroup, N: Subgroup, pi, F: ClassExpr,
                               rng: random.Random | None = None) -> bool:
    """Same test as ``is_hypercentral`` along one explicit chief series of N."""
    pi = _ps(pi)
    cs = chief_series(G, N, rng=rng)
    return all(is_F_central(G, f.upper, f.lower, F).semidirect_result
               for f in cs.factors if _constrained(f.order, pi))


@memoized
def _hypercentre(G: FiniteGroup, pi: PrimeSet, F: ClassExpr) -> Subgroup:
    ok = _hypercentral_map(G, pi, F)
    mask = 1
    for m, good in ok.items():
        if good:
            mask |= m
    Z = G.closure(mask)
    if not ok.get(Z.mask, False):
        raise HypercentreJoinFailure(f"{G.name}: join of hypercentral normals fails the test")
    return Z


def hypercentre(G: FiniteGroup, pi, F: ClassExpr) -> Subgroup:
    """Z_{pi F}(G): the join of all pi-F-hypercentral normal subgroups."""
    if not flags(F).formation:
        raise GroupError(f"{F} is not declared a formation")
    return _hypercentre(G, _ps(pi), F)


def hypercentre_ascending(G: FiniteGroup, pi, F: ClassExpr) -> Subgroup:
    """Oracle: repeatedly absorb good minimal normal subgroups of G/Z."""
    pi = _ps(pi)
    norms = normal_subgroups(G)
    Z = G.trivial
    while True:
        above = [M for M in norms if Z < M]
        minimal = [M for M in above if not any(X < M for X in above)]
        good = [M for M in minimal
                if not _constrained(M.order // Z.order, pi)
                or is_F_central(G, M, Z, F).semidirect_result]
        nxt = G.join(Z, *good) if good else Z
        if nxt == Z:
            return Z
        Z = nxt


def upper_central_series(G: FiniteGroup) -> list[Subgroup]:
    return G.upper_central_series()


def fitting_subgroup(G: FiniteGroup) -> Subgroup:
    return radical(G, NILPOTENT)


def fitting_length(G: FiniteGroup) -> int:
    r = fitting_length_or_none(G)
    if r is None:
        raise NotPiSolvable(f"{G.name} is not solvable")
    return r


def upper_p_series(G: FiniteGroup, p: int) -> list[Subgroup]:
    """1 <= O_p' <= O_p',p <= ... up to G; raises NotPiSolvable when it stalls."""
    not_p = PrimeSet.of(p).complement()
    terms = [G.trivial]
    K = G.trivial
    use_p = False
    while not K.is_whole:
        Q, w = G.quotient(K)
        A = o_pi(Q, PrimeSet.of(p) if use_p else not_p)
        if A.is_trivial and use_p:
            raise NotPiSolvable(f"{G.name} is not {p}-solvable")
        K = w.preimage(A)
        terms.append(K)
        use_p = not use_p
    return terms


def p_length(G: FiniteGroup, p: int) -> int:
    """Number of p-steps in the upper p-series."""
    terms = upper_p_series(G, p)
    return sum(1 for i in range(2, len(terms), 2) if terms[i] != terms[i - 1])


@memoized
def is_quaternion_free(G: FiniteGroup) -> bool:
    """No section of a Sylow 2-subgroup is isomorphic to Q8."""
    P = sylow_subgroup(G, 2)
    if P.order < 8:
        return True
    PG = G.subgroup_as_group(P)[0]
    for H in enumerate_lattice(PG).subgroups:
        if H.order < 8:
            continue
        HG = PG.subgroup_as_group(H)[0]
        for K in normal_subgroups(HG):
            if HG.order == 8 * K.order and is_quaternion_Q8(HG.quotient(K)[0]):
                return False
    return True


@memoized
def psi_p(G: FiniteGroup, p: int) -> Subgroup:
    """Subgroup generated by elements of order p (orders 2 and 4 for a Q8 section at p = 2)."""
    orders = G.element_orders
    if p == 2 and not is_quaternion_free(G):
        wanted = (orders == 2) | (orders == 4)
    else:
        wanted = orders == p
    return G.closure(bool_to_mask(wanted))


def psi_p_of(G: FiniteGroup, H: Subgroup, p: int) -> Subgroup:
    """Psi_p of the subgroup H, as a subgroup of G."""
    HG, emb = G.subgroup_as_group(H)
    inner = psi_p(HG, p)
    return Subgroup(G, sum(1 << int(emb[x]) for x in inner.members))


def local_route_agreement(G: FiniteGroup, F: ClassExpr) -> list[CentralityVerdict]:
    """Centrality verdicts for the chief factors of one chief series of G."""
    cs = chief_series(G)
    return [is_F_central(G, f.upper, f.lower, F) for f in cs.factors]


__all__ = [
    "CentralityVerdict", "ChiefFactor", "ChiefSeries", "HypercentreJoinFailure", "InvalidFactor",
    "NotPiSolvable", "chief_series", "factor_action_product", "factor_centralizer",
    "fitting_length", "fitting_subgroup", "hypercentre", "hypercentre_ascending",
    "is_F_central", "is_hypercentral", "is_hypercentral_via_series", "is_quaternion_free",
    "local_route_agreement", "p_length", "psi_p", "psi_p_of", "upper_central_series",
    "upper_p_series",
]
