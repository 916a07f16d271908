import random

import pytest

from normlab.classes import ABELIAN, ALL_PRIMES, NILPOTENT, SUPERSOLVABLE, Gpi, Npi, PrimeSet
from normlab.corpus import builtin_corpus, builtin_group
from normlab.lattice import normal_subgroups
from normlab.series import (
    InvalidFactor,
    NotPiSolvable,
    chief_series,
    factor_action_product,
    fitting_length,
    hypercentre,
    hypercentre_ascending,
    is_F_central,
    is_hypercentral,
    is_hypercentral_via_series,
    is_quaternion_free,
    local_route_agreement,
    p_length,
    psi_p,
    upper_central_series,
)

CORPUS = builtin_corpus()
SOLVABLE_SMALL = [G for G in CORPUS if G.order <= 120]
HYPER_F = [NILPOTENT, SUPERSOLVABLE, ABELIAN, Npi({2}), Gpi({3})]
HYPER_PI = [ALL_PRIMES, PrimeSet.of(2), PrimeSet.of(3), PrimeSet.of(2, 3)]


def _normal_of_order(G, n):
    return next(N for N in normal_subgroups(G) if N.order == n)


def test_chief_series_of_s4(oracle):
    S4 = builtin_group("S4")
    assert list(chief_series(S4).factor_orders) == oracle["chief_factor_orders_S4"]


def test_chief_series_terms_are_normal_and_chief():
    for G in CORPUS:
        cs = chief_series(G)
        assert cs.terms[0].is_trivial and cs.top.is_whole
        for f in cs.factors:
            assert f.lower < f.upper and f.upper.is_normal
            assert not any(f.lower < M < f.upper for M in normal_subgroups(G))


def test_chief_series_of_a5_is_one_step():
    cs = chief_series(builtin_group("A5"))
    assert cs.factor_orders == (60,) and not cs.factors[0].is_abelian


def test_centrality_examples():
    S3 = builtin_group("S3")
    A3 = _normal_of_order(S3, 3)
    assert not is_F_central(S3, A3, S3.trivial, NILPOTENT).semidirect_result
    assert is_F_central(S3, A3, S3.trivial, SUPERSOLVABLE).semidirect_result
    assert is_F_central(S3, S3.whole, A3, NILPOTENT).semidirect_result
    D8 = builtin_group("D8")
    Z = _normal_of_order(D8, 2)
    assert is_F_central(D8, Z, D8.trivial, NILPOTENT).semidirect_result


def test_non_chief_factor_rejected():
    S4 = builtin_group("S4")
    with pytest.raises(InvalidFactor):
        is_F_central(S4, S4.whole, S4.trivial, NILPOTENT)


def test_factor_action_product_order():
    S3 = builtin_group("S3")
    A3 = _normal_of_order(S3, 3)
    assert factor_action_product(S3, A3, S3.trivial).order == 6


def test_hypercentre_oracle(oracle):
    primes = {"P": ALL_PRIMES, "2": PrimeSet.of(2), "3": PrimeSet.of(3)}
    for key, order in oracle["hypercentre_N"].items():
        name, pi = key.split("_")
        assert hypercentre(builtin_group(name), primes[pi], NILPOTENT).order == order, key


@pytest.mark.parametrize("G", CORPUS, ids=lambda G: G.name)
def test_nilpotent_hypercentre_is_upper_central_limit(G):
    assert hypercentre(G, ALL_PRIMES, NILPOTENT) == upper_central_series(G)[-1]


def test_upper_central_limit_oracle(oracle, oracle_group):
    for name, order in oracle["upper_central_limit"].items():
        G = oracle_group(name)
        assert upper_central_series(G)[-1].order == order, name


@pytest.mark.parametrize("G", SOLVABLE_SMALL, ids=lambda G: G.name)
def test_hypercentre_matches_ascending_oracle(G):
    for F in HYPER_F:
        for pi in HYPER_PI:
            assert hypercentre(G, pi, F) == hypercentre_ascending(G, pi, F), (str(F), str(pi))


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_hypercentrality_independent_of_chief_series(seed):
    rng = random.Random(seed)
    for G in SOLVABLE_SMALL:
        for N in normal_subgroups(G):
            for F in (NILPOTENT, SUPERSOLVABLE):
                for pi in (ALL_PRIMES, PrimeSet.of(2)):
                    assert is_hypercentral_via_series(G, N, pi, F, rng=rng) == is_hypercentral(G, N, pi, F)


def test_local_route_agrees_with_products():
    for G in SOLVABLE_SMALL:
        for F in (NILPOTENT, SUPERSOLVABLE, Npi({2})):
            assert all(v.agree is not False for v in local_route_agreement(G, F)), (G.name, str(F))


def test_fitting_and_p_lengths(oracle):
    for name, n in oracle["fitting_length"].items():
        assert fitting_length(builtin_group(name)) == n, name
    for key, n in oracle["p_length"].items():
        name, p = key.split("_")
        assert p_length(builtin_group(name), int(p)) == n, key


def test_lengths_raise_on_nonsolvable():
    A5 = builtin_group("A5")
    with pytest.raises(NotPiSolvable):
        fitting_length(A5)
    with pytest.raises(NotPiSolvable):
        p_length(A5, 2)


def test_psi(oracle, oracle_group):
    for key, n in oracle["psi"].items():
        name, p = key.split("_")
        G = oracle_group(name)
        assert psi_p(G, int(p)).order == n, key


def test_quaternion_free():
    assert not is_quaternion_free(builtin_group("Q8"))
    assert is_quaternion_free(builtin_group("D8"))
    assert is_quaternion_free(builtin_group("S4"))

