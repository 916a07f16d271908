import pytest

from normlab.classes import (
    ABELIAN,
    ALL,
    NILPOTENT,
    ONE,
    SOLVABLE,
    SUPERSOLVABLE,
    ClassError,
    FormationProduct,
    Gpi,
    Npi,
    is_member,
    parse_class,
    radical,
)
from normlab.corpus import builtin_corpus, builtin_group
from normlab.norms import (
    classical_norm,
    crit_s,
    crit_s_full,
    hf_norm,
    int_x,
    naive_hf_norm,
    norm_infinity,
    norm_series,
    wielandt_subgroup,
    x_maximal_subgroups,
)

CORPUS = builtin_corpus()
UP_TO_48 = [G for G in CORPUS if G.order <= 48]
H_CLASSES = {"1": ONE, "O2": Gpi({2}), "O3": Gpi({3})}
F_CLASSES = {"1": ONE, "A": ABELIAN, "N": NILPOTENT, "U": SUPERSOLVABLE}
NORM_PAIRS = [(ONE, ONE), (ONE, ABELIAN), (ONE, NILPOTENT), (ONE, SUPERSOLVABLE), (NILPOTENT, SUPERSOLVABLE),
              (Gpi({2}), NILPOTENT), (Gpi({3}), SUPERSOLVABLE), (Npi({2}), Gpi({3}))]


def _split(key):
    name, h, f = key.split("_")
    return builtin_group(name), H_CLASSES[h], F_CLASSES[f]


def test_norm_oracle(oracle):
    for key, order in oracle["norm"].items():
        G, H, F = _split(key)
        assert hf_norm(G, H, F).order == order, key


def test_norm_infinity_oracle(oracle):
    for key, order in oracle["norm_inf"].items():
        G, H, F = _split(key)
        assert norm_infinity(G, H, F).order == order, key


@pytest.mark.parametrize("G", UP_TO_48, ids=lambda G: G.name)
def test_norm_matches_naive_oracle(G):
    for H, F in NORM_PAIRS:
        assert hf_norm(G, H, F) == naive_hf_norm(G, H, F), (str(H), str(F))


@pytest.mark.parametrize("G", CORPUS, ids=lambda G: G.name)
def test_norm_series_invariants(G):
    for H, F in [(ONE, NILPOTENT), (ONE, SUPERSOLVABLE), (Gpi({2}), ABELIAN)]:
        s = norm_series(G, H, F)
        assert s.terms[0].is_trivial
        assert all(a < b and b.is_normal for a, b in zip(s.terms, s.terms[1:]))
        assert hf_norm(G, H, F) <= s.terminal
        Q, proj = G.quotient(s.terminal)
        assert hf_norm(Q, H, F).is_trivial


def test_classical_norm_of_hamiltonian_group():
    Q8 = builtin_group("Q8")
    assert classical_norm(Q8).is_whole
    assert classical_norm(builtin_group("S3")).is_trivial


def test_norm_contains_radical():
    for G in CORPUS:
        assert radical(G, NILPOTENT) <= hf_norm(G, NILPOTENT, ONE)


def test_norm_rejects_non_fitting_h():
    with pytest.raises(ClassError):
        hf_norm(builtin_group("S3"), ABELIAN, NILPOTENT)


def test_int_n_oracle(oracle):
    for name, order in oracle["int_N"].items():
        assert int_x(builtin_group(name), NILPOTENT).order == order, name


def test_x_maximal_are_maximal_in_x():
    S4 = builtin_group("S4")
    tops = x_maximal_subgroups(S4, NILPOTENT)
    assert sorted(U.order for U in tops) == [3, 3, 3, 3, 8, 8, 8]
    for U in tops:
        assert not any(U < V for V in tops)


def test_int_all_is_whole():
    assert all(int_x(G, ALL).is_whole for G in CORPUS if G.order <= 60)


CRIT_CLASSES = [NILPOTENT, SUPERSOLVABLE, ABELIAN, FormationProduct(Gpi({2}), Gpi({3})),
                FormationProduct(NILPOTENT, Gpi({3})), parse_class("Nc(2)"), Npi({2}), SOLVABLE]


@pytest.mark.parametrize("X", CRIT_CLASSES, ids=str)
def test_crit_s_matches_full_check(X):
    for G in CORPUS:
        if G.order <= 120:
            assert crit_s(G, X) == crit_s_full(G, X), G.name


def test_crit_s_examples():
    assert crit_s(builtin_group("S3"), NILPOTENT)
    assert crit_s(builtin_group("A4"), SUPERSOLVABLE)
    assert crit_s(builtin_group("A5"), SOLVABLE)
    assert not crit_s(builtin_group("S4"), NILPOTENT)
    assert not is_member(builtin_group("S3"), FormationProduct(Gpi({2}), Gpi({3})))
    assert crit_s(builtin_group("S3"), FormationProduct(Gpi({2}), Gpi({3})))


def test_wielandt_oracle(oracle):
    for name, order in oracle["wielandt"].items():
        assert wielandt_subgroup(builtin_group(name)).order == order, name
