import pytest
from hypothesis import given, settings, strategies as st

from normlab.classes import (
    ABELIAN,
    ALL,
    NILPOTENT,
    ONE,
    SOLVABLE,
    SUPERSOLVABLE,
    ClassParseError,
    FittingProduct,
    FormationProduct,
    Gpi,
    Ldec,
    Npi,
    Nr,
    PrimeSet,
    canonical_local,
    flags,
    is_member,
    o_pi,
    parse_class,
    radical,
    residual,
    residual_scan,
    saturation_spot_check,
)
from normlab.corpus import builtin_corpus, builtin_group
from normlab.lattice import enumerate_lattice, normal_subgroups
from normlab.reports import FAIL, PASS

CORPUS = builtin_corpus()

# -- grammar ---------------------------------------------------------------------------

primesets = st.one_of(
    st.just(PrimeSet.parse("P")),
    st.sets(st.sampled_from([2, 3, 5, 7]), min_size=1, max_size=3).map(lambda s: PrimeSet.of(*s)),
    st.sets(st.sampled_from([2, 3, 5]), min_size=1, max_size=2).map(lambda s: PrimeSet.of(*s).complement()),
)
atoms = st.one_of(
    st.sampled_from([ONE, ALL, ABELIAN, NILPOTENT, SUPERSOLVABLE, SOLVABLE]),
    primesets.map(lambda p: parse_class(f"Gpi({p})")),
    primesets.map(lambda p: parse_class(f"Npi({p})")),
    primesets.map(lambda p: parse_class(f"Spi({p})")),
    st.integers(1, 4).map(Nr),
    st.integers(1, 4).map(lambda c: parse_class(f"Nc({c})")),
    st.sampled_from([2, 3, 5]).map(Ldec),
    st.sampled_from(["Tsigma(2<3)", "Tsigma(3<2<5)", "Cpi({2})"]).map(parse_class),
)
exprs = st.recursive(
    atoms,
    lambda inner: st.one_of(
        st.tuples(inner, inner).map(lambda t: FormationProduct(*t)),
        st.tuples(inner, inner).map(lambda t: FittingProduct(*t)),
    ),
    max_leaves=5,
)


@given(exprs)
@settings(max_examples=300, deadline=None)
def test_render_parse_round_trip(C):
    assert parse_class(str(C)) == C


@pytest.mark.parametrize("text,pos", [("N*(", 3), ("Q", 0), ("Gpi({2,4})", 4), ("Nr(0)", 3), ("N U", 2)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ClassParseError) as e:
        parse_class(text)
    assert e.value.position == pos


def test_primeset_strings():
    assert str(PrimeSet.parse("{3,2}")) == "{2,3}"
    assert PrimeSet.parse("{2}'").complement() == PrimeSet.of(2)
    assert PrimeSet.parse("P").is_all


# -- membership, residuals, radicals -------------------------------------------------


def test_remark_memberships():
    # S3 is critical for G_2 * G_3: outside the class, every proper subgroup inside
    S3 = builtin_group("S3")
    X = FormationProduct(Gpi({2}), Gpi({3}))
    assert not is_member(S3, X)
    assert all(is_member(S3.subgroup_as_group(H)[0], X) for H in enumerate_lattice(S3).subgroups
               if not H.is_whole)
    assert not is_member(S3, FormationProduct(NILPOTENT, Gpi({3})))


def test_a4_is_3_nilpotent(oracle):
    A4 = builtin_group("A4")
    assert is_member(A4, Npi({3}))
    assert residual(A4, NILPOTENT).order == oracle["residual"]["A4_N"] == 4


def test_everything_in_G():
    assert all(is_member(G, ALL) for G in CORPUS)


def test_residual_examples(oracle):
    r = oracle["residual"]
    S4 = builtin_group("S4")
    assert residual(builtin_group("S3"), ABELIAN).order == r["S3_A"]
    assert residual(builtin_group("A5"), SOLVABLE).order == r["A5_S"]
    assert residual(S4, SUPERSOLVABLE).order == r["S4_U"]
    assert residual(S4, ABELIAN).order == r["S4_A"]
    assert residual(S4, NILPOTENT).order == r["S4_N"]
    assert residual(builtin_group("C12"), ABELIAN).is_trivial


def test_radical_examples(oracle):
    r = oracle["radical"]
    S4 = builtin_group("S4")
    assert radical(S4, NILPOTENT).order == r["S4_N"]
    assert radical(builtin_group("A5"), SOLVABLE).order == r["A5_S"]
    assert o_pi(S4, PrimeSet.of(2)).order == r["S4_O2"]
    assert o_pi(S4, PrimeSet.of(5)).is_trivial
    assert o_pi(builtin_group("D8"), PrimeSet.of(2, 3)).is_whole
    assert radical(builtin_group("Q8"), NILPOTENT).is_whole


RESIDUAL_CLASSES = [ABELIAN, NILPOTENT, SUPERSOLVABLE, SOLVABLE, Gpi({3}), Npi({2}), Npi({3}), Nr(2),
                    parse_class("Nc(2)"), parse_class("Tsigma(3<2)"), FormationProduct(NILPOTENT, ABELIAN)]


@pytest.mark.parametrize("F", RESIDUAL_CLASSES, ids=str)
def test_closed_form_residuals_match_scan(F):
    for G in CORPUS:
        if G.order <= 60:
            assert residual(G, F) == residual_scan(G, F), G.name


def _cyclic_normal_series(G):
    """Independent supersolvability test: a normal series with cyclic factors exists."""
    normals = normal_subgroups(G)
    target = G.all_mask

    def extend(N, seen):
        if N.mask == target:
            return True
        for M in normals:
            if N < M and M.mask not in seen:
                seen.add(M.mask)
                if any(G.join(N, G.closure([x])) == M for x in M.members) and extend(M, seen):
                    return True
        return False

    return extend(G.trivial, set())


@pytest.mark.parametrize("G", [G for G in CORPUS if G.order <= 48], ids=lambda G: G.name)
def test_supersolvable_cross_check(G):
    assert is_member(G, SUPERSOLVABLE) == _cyclic_normal_series(G)


def test_saturation_spot_checks():
    r = saturation_spot_check(builtin_group("D8"), NILPOTENT)
    assert r.outcome == PASS
    r = saturation_spot_check(builtin_group("S3"), NILPOTENT)
    assert r.outcome == PASS and not r.detail["quotient_in_F"]
    r = saturation_spot_check(builtin_group("C4"), ABELIAN, audit=True)
    assert r.outcome == PASS and r.basis == "audit"
    assert saturation_spot_check(builtin_group("C4"), ABELIAN).outcome == "skip"


@pytest.mark.parametrize("F", [NILPOTENT, SUPERSOLVABLE, SOLVABLE, Npi({2}), Nr(2)], ids=str)
def test_saturation_over_corpus(F):
    assert all(saturation_spot_check(G, F).outcome != FAIL for G in CORPUS)


def test_declared_flags():
    assert flags(SUPERSOLVABLE).saturated and flags(SUPERSOLVABLE).s_closed
    assert not flags(ABELIAN).saturated and not flags(ABELIAN).fitting
    assert flags(NILPOTENT).fitting and flags(NILPOTENT).e_closed is False
    assert flags(Gpi({2})).e_closed and flags(SOLVABLE).e_closed


def test_canonical_local_values():
    assert canonical_local(NILPOTENT, 2) is not None
    assert canonical_local(SUPERSOLVABLE, 3) is not None
