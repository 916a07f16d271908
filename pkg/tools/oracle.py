"""Independent brute-force oracle for the frozen values in tests/test_derived.py.

Groups are sets of permutation tuples; nothing from normlab is imported.
Products follow "apply a, then b". Run: python3 tools/oracle.py
"""

from __future__ import annotations

import json
from functools import lru_cache


def mul(a, b):
    return tuple(b[i] for i in a)


def inv(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def cyc(deg, *cycles):
    p = list(range(deg))
    for c in cycles:
        for i, x in enumerate(c):
            p[x - 1] = c[(i + 1) % len(c)] - 1
    return tuple(p)


def closure(gens, deg):
    e = tuple(range(deg))
    out = {e}
    frontier = [e]
    gens = [g for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(out)


def order_of(x):
    e = tuple(range(len(x)))
    n, y = 1, x
    while y != e:
        y = mul(y, x)
        n += 1
    return n


@lru_cache(maxsize=None)
def subgroups(G: frozenset):
    """Every subgroup of the permutation group G, grown one element at a time."""
    deg = len(next(iter(G)))
    triv = frozenset([tuple(range(deg))])
    found = {triv}
    frontier = [triv]
    while frontier:
        nxt = []
        for H in frontier:
            for x in G - H:
                K = closure(list(H) + [x], deg)
                if K not in found:
                    found.add(K)
                    nxt.append(K)
        frontier = nxt
    return sorted(found, key=lambda H: (len(H), sorted(H)))


def conj(H, g):
    gi = inv(g)
    return frozenset(mul(mul(gi, h), g) for h in H)


def is_normal(H, G):
    return all(conj(H, g) == H for g in G)


def normal_subgroups(G):
    return [H for H in subgroups(G) if is_normal(H, G)]


def normalizer(H, G):
    return frozenset(g for g in G if conj(H, g) == H)


def comm(A, B):
    deg = len(next(iter(A)))
    return closure([mul(mul(inv(a), inv(b)), mul(a, b)) for a in A for b in B], deg)


def join(*subs):
    deg = len(next(iter(subs[0])))
    return closure([x for S in subs for x in S], deg)


def derived_chain_in(U, N):
    D = U
    while True:
        if D <= N:
            return True
        D2 = comm(D, D)
        if D2 == D:
            return False
        D = D2


def lower_chain_in(U, N):
    D = U
    while True:
        if D <= N:
            return True
        D2 = comm(D, U)
        if D2 == D:
            return False
        D = D2


def prime_index_chain(U, N):
    """U/N supersolvable: one U-chief chain from N to U has only prime indices."""
    normals = [K for K in normal_subgroups(U) if N <= K]
    cur = N
    while cur != U:
        above = [K for K in normals if cur < K]
        K = min(above, key=len)
        idx = len(K) // len(cur)
        if not is_prime(idx):
            return False
        cur = K
    return True


def is_prime(n):
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def primes_of(n):
    return [p for p in range(2, n + 1) if n % p == 0 and is_prime(p)]


QUOTIENT_TESTS = {
    "1": lambda U, N: U == N,
    "A": lambda U, N: comm(U, U) <= N,
    "N": lower_chain_in,
    "U": prime_index_chain,
    "S": derived_chain_in,
}


def residual(U, cls):
    test = QUOTIENT_TESTS[cls]
    best = U
    for N in normal_subgroups(U):
        if test(U, N):
            best = best & N
    return frozenset(best)


def is_nilpotent(H):
    deg = len(next(iter(H)))
    return lower_chain_in(H, frozenset([tuple(range(deg))]))


def o_pi(G, pi):
    subs = [N for N in normal_subgroups(G) if all(p in pi for p in primes_of(len(N)))]
    return join(*subs)


def radical(G, cls):
    if cls == "1":
        return frozenset([tuple(range(len(next(iter(G)))))])
    if cls == "N":
        return join(*[N for N in normal_subgroups(G) if is_nilpotent(N)])
    if cls == "S":
        triv = frozenset([tuple(range(len(next(iter(G)))))])
        return join(*[N for N in normal_subgroups(G) if derived_chain_in(N, triv)])
    raise ValueError(cls)


def norm(G, Hcls, Fcls):
    R = radical(G, Hcls) if isinstance(Hcls, str) else o_pi(G, Hcls)
    out = G
    for U in subgroups(G):
        out = out & normalizer(join(residual(U, Fcls), R), G)
    return frozenset(out)


def quotient(G, N):
    """G/N as a permutation group on the cosets, with the projection."""
    cosets = []
    index = {}
    for g in sorted(G):
        if g in index:
            continue
        c = frozenset(mul(n, g) for n in N)
        for x in c:
            index[x] = len(cosets)
        cosets.append(c)

    def proj(g):
        return tuple(index[mul(next(iter(c)), g)] for c in cosets)

    Q = frozenset(proj(g) for g in G)
    return Q, proj


def norm_infinity(G, Hcls, Fcls):
    deg = len(next(iter(G)))
    T = frozenset([tuple(range(deg))])
    while True:
        Q, proj = quotient(G, T)
        n = norm(Q, Hcls, Fcls)
        nxt = frozenset(g for g in G if proj(g) in n)
        if nxt == T:
            return T
        T = nxt


def chief_chain(G, top):
    deg = len(next(iter(G)))
    normals = [N for N in normal_subgroups(G) if N <= top]
    cur = frozenset([tuple(range(deg))])
    chain = [cur]
    while cur != top:
        cur = min([K for K in normals if cur < K], key=len)
        chain.append(cur)
    return chain


def hypercentre_N(G, pi):
    """Largest normal Z whose pi-chief factors below it are all central."""
    good = []
    for Z in normal_subgroups(G):
        ch = chief_chain(G, Z)
        ok = True
        for K, L in zip(ch, ch[1:]):
            if any(p in pi for p in primes_of(len(L) // len(K))) and not comm(L, G) <= K:
                ok = False
        if ok:
            good.append(Z)
    top = max(good, key=len)
    assert all(Z <= top for Z in good)
    return top


def upper_central_limit(G):
    deg = len(next(iter(G)))
    Z = frozenset([tuple(range(deg))])
    while True:
        Q, proj = quotient(G, Z)
        cen = frozenset(q for q in Q if all(mul(q, x) == mul(x, q) for x in Q))
        nxt = frozenset(g for g in G if proj(g) in cen)
        if nxt == Z:
            return Z
        Z = nxt


def fitting_length(G):
    n = 0
    while len(G) > 1:
        G, _ = quotient(G, radical(G, "N"))
        n += 1
    return n


def p_length(G, p):
    """Count p-factors in the upper p-series 1 <= O_p' <= O_p'p <= ..."""
    n = 0
    while len(G) > 1:
        others = [q for q in primes_of(len(G)) if q != p]
        A = o_pi(G, others)
        G, _ = quotient(G, A)
        if len(G) == 1:
            break
        B = o_pi(G, [p])
        assert len(B) > 1, "not p-solvable"
        G, _ = quotient(G, B)
        n += 1
    return n


def int_N(G):
    nil = [U for U in subgroups(G) if is_nilpotent(U)]
    maxi = [U for U in nil if not any(U < V for V in nil)]
    out = G
    for U in maxi:
        out = out & U
    return frozenset(out)


def has_q8_section(P):
    for H in subgroups(P):
        if len(H) < 8:
            continue
        for K in normal_subgroups(H):
            if len(H) == 8 * len(K):
                Q, _ = quotient(H, K)
                orders = sorted(order_of(x) for x in Q)
                if orders == [1, 2, 4, 4, 4, 4, 4, 4]:
                    return True
    return False


def psi(G, p):
    P = max((H for H in subgroups(G) if primes_of(len(H)) in ([p], [])), key=len)
    deg = len(next(iter(G)))
    wanted = {p}
    if p == 2 and has_q8_section(P):
        wanted = {2, 4}
    return closure([x for x in G if order_of(x) in wanted], deg)


# -- groups ----------------------------------------------------------------------------


def groups():
    S3 = closure([cyc(3, (1, 2)), cyc(3, (1, 2, 3))], 3)
    S4 = closure([cyc(4, (1, 2)), cyc(4, (1, 2, 3, 4))], 4)
    A4 = closure([cyc(4, (1, 2, 3)), cyc(4, (1, 2), (3, 4))], 4)
    A5 = closure([cyc(5, (1, 2, 3)), cyc(5, (1, 2, 3, 4, 5))], 5)
    D8 = closure([cyc(4, (1, 2, 3, 4)), cyc(4, (1, 3))], 4)
    # Q8 in its regular representation: i, j as permutations of {1, i, j, k, -1, -i, -j, -k}
    i_ = cyc(8, (1, 2, 5, 6), (3, 8, 7, 4))
    j_ = cyc(8, (1, 3, 5, 7), (2, 4, 6, 8))
    Q8 = closure([i_, j_], 8)
    C4 = closure([cyc(4, (1, 2, 3, 4))], 4)
    C5 = closure([cyc(5, (1, 2, 3, 4, 5))], 5)
    C9 = closure([cyc(9, tuple(range(1, 10)))], 9)
    E8 = closure([cyc(6, (1, 2)), cyc(6, (3, 4)), cyc(6, (5, 6))], 6)
    S3xC5 = closure([cyc(8, (1, 2)), cyc(8, (1, 2, 3)), cyc(8, (4, 5, 6, 7, 8))], 8)
    return dict(S3=S3, S4=S4, A4=A4, A5=A5, D8=D8, Q8=Q8, C4=C4, C5=C5, C9=C9, E8=E8, S3xC5=S3xC5)


def main():
    g = groups()
    S3, S4, A4, A5, D8, Q8 = (g[k] for k in ("S3", "S4", "A4", "A5", "D8", "Q8"))
    out = {"_source": "tools/oracle.py (independent brute force on permutation tuples)"}
    out["order"] = {k: len(v) for k, v in g.items()}
    out["subgroup_count"] = {k: len(subgroups(v)) for k, v in g.items() if k != "S3xC5"}
    out["subgroup_classes"] = {
        k: len({frozenset(conj(H, x) for x in g[k]) for H in subgroups(g[k])}) for k in ("S3", "S4", "A4", "A5", "D8", "Q8")}
    out["normal_orders"] = {k: sorted(len(N) for N in normal_subgroups(v)) for k, v in g.items()
                            if k != "S3xC5"}
    out["chief_factor_orders_S4"] = [len(b) // len(a) for a, b in zip(chief_chain(S4, S4), chief_chain(S4, S4)[1:])]
    out["frattini"] = {}
    for k in ("S4", "C9", "E8", "Q8", "D8", "A5"):
        v = g[k]
        maxes = [M for M in subgroups(v) if M != v and not any(M < K < v for K in subgroups(v))]
        fr = v
        for M in maxes:
            fr = fr & M
        out["frattini"][k] = len(fr)
    out["involutions"] = {k: sum(1 for x in g[k] if order_of(x) == 2) for k in ("D8", "Q8")}
    out["no_order_20_in_A5"] = not any(len(H) == 20 for H in subgroups(A5))
    out["sylow2_S4"] = max(len(H) for H in subgroups(S4) if primes_of(len(H)) == [2])
    Q, _ = quotient(S4, [N for N in normal_subgroups(S4) if len(N) == 4][0])
    out["S4_mod_V4"] = {"order": len(Q), "abelian": all(mul(a, b) == mul(b, a) for a in Q for b in Q)}
    out["residual"] = {"S3_A": len(residual(S3, "A")), "A5_S": len(residual(A5, "S")),
                       "A4_N": len(residual(A4, "N")), "S4_U": len(residual(S4, "U")),
                       "S4_A": len(residual(S4, "A")), "S4_N": len(residual(S4, "N"))}
    out["radical"] = {"S4_N": len(radical(S4, "N")), "A5_S": len(radical(A5, "S")),
                      "S4_O2": len(o_pi(S4, [2]))}
    out["norm"] = {
        "Q8_1_1": len(norm(Q8, "1", "1")), "S3_1_1": len(norm(S3, "1", "1")),
        "S3_1_A": len(norm(S3, "1", "A")), "S4_O2_U": len(norm(S4, [2], "U")),
        "S4_1_U": len(norm(S4, "1", "U")), "A5_1_U": len(norm(A5, "1", "U")),
        "S4_1_A": len(norm(S4, "1", "A")), "D8_1_1": len(norm(D8, "1", "1")),
        "A4_1_1": len(norm(A4, "1", "1")),
    }
    out["norm_inf"] = {"S4_1_U": len(norm_infinity(S4, "1", "U")), "A5_1_U": len(norm_infinity(A5, "1", "U")),
                       "S3_1_A": len(norm_infinity(S3, "1", "A")), "S4_1_N": len(norm_infinity(S4, "1", "N")),
                       "S4_O3_A": len(norm_infinity(S4, [3], "A")), "A4_1_N": len(norm_infinity(A4, "1", "N"))}
    out["hypercentre_N"] = {"S3_P": len(hypercentre_N(S3, [2, 3, 5, 7])), "S3_2": len(hypercentre_N(S3, [2])),
                            "S3_3": len(hypercentre_N(S3, [3])), "S4_P": len(hypercentre_N(S4, [2, 3])),
                            "S4_3": len(hypercentre_N(S4, [3])), "D8_P": len(hypercentre_N(D8, [2])),
                            "A4_2": len(hypercentre_N(A4, [2])), "A4_3": len(hypercentre_N(A4, [3]))}
    out["upper_central_limit"] = {k: len(upper_central_limit(v)) for k, v in g.items() if k != "S3xC5"}
    out["fitting_length"] = {"S4": fitting_length(S4), "S3": fitting_length(S3), "A4": fitting_length(A4),
                             "D8": fitting_length(D8)}
    out["p_length"] = {"S4_2": p_length(S4, 2), "S4_3": p_length(S4, 3), "S3_2": p_length(S3, 2),
                       "S3_3": p_length(S3, 3)}
    out["int_N"] = {"S4": len(int_N(S4)), "S3": len(int_N(S3)), "D8": len(int_N(D8))}
    out["psi"] = {"Q8_2": len(psi(Q8, 2)), "C4_2": len(psi(g["C4"], 2)), "S4_2": len(psi(S4, 2)),
                  "S4_3": len(psi(S4, 3)), "E8_2": len(psi(g["E8"], 2)), "A4_2": len(psi(A4, 2))}
    out["wielandt"] = {}
    for k in ("A5", "S3", "S4", "D8"):
        v = g[k]
        subn = [H for H in subgroups(v) if _subnormal(H, v)]
        w = v
        for H in subn:
            w = w & normalizer(H, v)
        out["wielandt"][k] = len(w)
    print(json.dumps(out, indent=1, sort_keys=True))


def _subnormal(H, G):
    cur = G
    while True:
        if H == cur:
            return True
        nc = closure([mul(mul(inv(g), h), g) for h in H for g in cur], len(next(iter(G))))
        if nc == cur:
            return False
        cur = nc


if __name__ == "__main__":
    main()
