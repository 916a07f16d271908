"""Norm subgroups: h-F-norms, their ascending series, Int_X, S-critical groups."""

from __future__ import annotations

from dataclasses import dataclass

from normlab.classes import (
    ONE,
    ClassError,
    ClassExpr,
    Gpi,
    flags,
    is_member,
    is_subgroup_member,
    radical,
    residual_of,
)
from normlab.group import FiniteGroup, Subgroup, memoized
from normlab.lattice import enumerate_lattice, is_subnormal, maximal_subgroups


def _check_pair(H: ClassExpr, F: ClassExpr) -> None:
    if not flags(H).fitting:
        raise ClassError(f"{H} is not declared a Fitting class")
    if not flags(F).formation:
        raise ClassError(f"{F} is not declared a formation")


@memoized
def hf_norm(G: FiniteGroup, H: ClassExpr, F: ClassExpr) -> Subgroup:
    """Intersection over U <= G of N_G(U^F G_H).

    Only one U per conjugacy class is visited: conjugating U conjugates
    U^F G_H (the radical is normal), so the class contributes the core of
    one normalizer.
    """
    _check_pair(H, F)
    R = radical(G, H)
    mask = G.all_mask
    for U in enumerate_lattice(G).representatives:
        K = G.join(residual_of(G, U, F), R)
        mask &= G.core(G.normalizer(K)).mask
        if mask == 1:
            break
    N = Subgroup(G, mask)
    assert N.is_normal
    return N


def naive_hf_norm(G: FiniteGroup, H: ClassExpr, F: ClassExpr) -> Subgroup:
    """Oracle: the same intersection taken over every subgroup."""
    _check_pair(H, F)
    R = radical(G, H)
    mask = G.all_mask
    for U in enumerate_lattice(G).subgroups:
        mask &= G.normalizer(G.join(residual_of(G, U, F), R)).mask
    return Subgroup(G, mask)


def pi_f_norm(G: FiniteGroup, pi, F: ClassExpr) -> Subgroup:
    """The norm with H = G_pi, i.e. built on O_pi(G). Callers pass pi' for the pi'F-norm."""
    return hf_norm(G, Gpi(pi), F)


@dataclass(frozen=True)
class NormSeries:
    group: FiniteGroup
    H: ClassExpr
    F: ClassExpr
    terms: tuple[Subgroup, ...]

    @property
    def terminal_index(self) -> int:
        return len(self.terms) - 1

    @property
    def terminal(self) -> Subgroup:
        return self.terms[-1]


@memoized
def norm_series(G: FiniteGroup, H: ClassExpr, F: ClassExpr) -> NormSeries:
    """T_0 = 1 and T_i / T_{i-1} = norm(G / T_{i-1}), until it stops growing."""
    terms = [G.trivial]
    while True:
        T = terms[-1]
        Q, proj = G.quotient(T)
        nxt = proj.preimage(hf_norm(Q, H, F))
        if nxt == T:
            return NormSeries(G, H, F, tuple(terms))
        terms.append(nxt)


def norm_infinity(G: FiniteGroup, H: ClassExpr, F: ClassExpr) -> Subgroup:
    return norm_series(G, H, F).terminal


def pi_f_norm_infinity(G: FiniteGroup, pi, F: ClassExpr) -> Subgroup:
    return norm_infinity(G, Gpi(pi), F)


@memoized
def _x_maximal(G: FiniteGroup, X: ClassExpr) -> tuple[Subgroup, ...]:
    inside = [U for U in enumerate_lattice(G).subgroups if is_subgroup_member(G, U, X)]
    out = [U for i, U in enumerate(inside) if not any(U < V for V in inside[i + 1:])]
    return tuple(out)


def x_maximal_subgroups(G: FiniteGroup, X: ClassExpr) -> list[Subgroup]:
    """Subgroups in X not properly contained in another X-subgroup."""
    return list(_x_maximal(G, X))


def int_x(G: FiniteGroup, X: ClassExpr) -> Subgroup:
    """Intersection of all X-maximal subgroups."""
    mask = G.all_mask
    for U in _x_maximal(G, X):
        mask &= U.mask
    return Subgroup(G, mask)


def crit_s(G: FiniteGroup, X: ClassExpr) -> bool:
    """G is outside X while every proper subgroup lies in X.

    For S-closed X testing the maximal subgroups is enough.
    """
    if is_member(G, X):
        return False
    pool = maximal_subgroups(G) if flags(X).s_closed else enumerate_lattice(G).subgroups
    return all(is_subgroup_member(G, U, X) for U in pool if not U.is_whole)


def crit_s_full(G: FiniteGroup, X: ClassExpr) -> bool:
    """Oracle: the literal check over every proper subgroup."""
    if is_member(G, X):
        return False
    return all(is_subgroup_member(G, U, X) for U in enumerate_lattice(G).subgroups if not U.is_whole)


def classical_norm(G: FiniteGroup) -> Subgroup:
    """Intersection of the normalizers of all subgroups."""
    return hf_norm(G, ONE, ONE)


@memoized
def wielandt_subgroup(G: FiniteGroup) -> Subgroup:
    """Intersection of the normalizers of all subnormal subgroups."""
    mask = G.all_mask
    for U in enumerate_lattice(G).subgroups:
        if is_subnormal(G, U):
            mask &= G.normalizer(U).mask
    return Subgroup(G, mask)


__all__ = [
    "NormSeries", "classical_norm", "crit_s", "crit_s_full", "hf_norm", "int_x",
    "naive_hf_norm", "norm_infinity", "norm_series", "pi_f_norm", "pi_f_norm_infinity",
    "wielandt_subgroup", "x_maximal_subgroups",
]
