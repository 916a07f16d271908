import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from normlab.classes import SOLVABLE, radical
from normlab.corpus import (
    CacheStore,
    CacheVersionMismatch,
    CapExceeded,
    CorpusManifest,
    CorruptCache,
    GroupDescriptor,
    ParseError,
    UnknownGroup,
    ValidationError,
    builtin_catalog,
    builtin_corpus,
    builtin_group,
    dump_manifest,
    load_corpus,
    load_group,
    parse_manifest,
    parse_permutation,
)
from normlab.group import is_quaternion_Q8
from normlab.harness import run_verification
from normlab.lattice import enumerate_lattice

SAMPLE = Path(__file__).parent.parent / "docs" / "sample_manifest.jsonl"


def _one(construction, name="G"):
    return load_group(GroupDescriptor(name, construction))


def test_spec_s3_manifest_line():
    m = parse_manifest('{"name":"S3","construction":{"perms":{"degree":3,"gens":["(1 2)","(1 2 3)"]}}}')
    (G,) = load_corpus(m)
    assert G.order == 6 and not G.is_abelian


def test_empty_manifest():
    assert load_corpus(parse_manifest("")) == []
    assert load_corpus(parse_manifest('{"schema_version": 1, "groups": []}')) == []


def test_sample_manifest_covers_all_paths():
    groups = load_corpus(parse_manifest(SAMPLE.read_text()))
    assert [G.order for G in groups] == [6, 6, 10, 2, 30, 21]
    assert groups[0].id == groups[1].id  # cycle and image-list notation build the same table


def test_permutation_notations_agree():
    assert parse_permutation("(1 2 3)(4 5)", 5) == parse_permutation("[2,3,1,5,4]", 5) == [1, 2, 0, 4, 3]
    assert parse_permutation("()", 3) == [0, 1, 2]


def test_non_bijective_generator():
    with pytest.raises(ValidationError, match="non-bijective"):
        _one({"perms": {"degree": 3, "gens": ["[1,1,2]"]}})


@pytest.mark.parametrize("text", ["(1 4)", "(1 2)(2 3)", "1 2"])
def test_bad_cycles(text):
    with pytest.raises(ValidationError):
        parse_permutation(text, 3)


def test_malformed_table():
    with pytest.raises(ValidationError):
        _one({"table": {"order": 2, "table": [0, 1, 0, 1]}})
    with pytest.raises(ParseError):
        parse_manifest('{"name": "T", "construction": {"table": {"order": 2, "table": [0, 1]}}}')


def test_cap_exceeded():
    with pytest.raises(CapExceeded):
        load_group(GroupDescriptor("big", {"named": {"family": "symmetric", "params": [6]}}), cap=500)


def test_parse_error_line_and_column():
    text = '{"schema_version": 1}\n{"name": "C2", "construction": {"named": {"family": "cyclic", "params": [2]}}}\n{"name": oops}\n'
    with pytest.raises(ParseError) as e:
        parse_manifest(text)
    assert (e.value.line, e.value.col) == (3, 10)


def test_duplicate_names_and_bad_version():
    line = '{"name": "C2", "construction": {"named": {"family": "cyclic", "params": [2]}}}'
    with pytest.raises(ValidationError):
        parse_manifest(line + "\n" + line)
    with pytest.raises(ValidationError):
        parse_manifest('{"schema_version": 99, "groups": []}')


def test_unknown_group():
    with pytest.raises(UnknownGroup):
        builtin_group("M11")


named = st.sampled_from([
    {"named": {"family": "cyclic", "params": [4]}},
    {"named": {"family": "dihedral", "params": [3]}},
    {"perms": {"degree": 3, "gens": ["(1 2 3)"]}},
    {"table": {"order": 1, "table": [0]}},
])
constructions = st.recursive(named, lambda inner: st.tuples(inner, inner).map(lambda t: {"product": list(t)}),
                             max_leaves=3)


@given(st.lists(constructions, max_size=4), st.one_of(st.none(), st.integers(1, 5000)),
       st.one_of(st.none(), st.text(max_size=20)))
@settings(max_examples=100, deadline=None)
def test_manifest_round_trip(cons, cap, prov):
    m = CorpusManifest(tuple(GroupDescriptor(f"g{i}", c) for i, c in enumerate(cons)), cap, prov)
    assert parse_manifest(dump_manifest(m)) == m


# -- catalog -------------------------------------------------------------------------------


def test_catalog_minimum_contents():
    names = set(builtin_catalog().names())
    assert {f"C{n}" for n in range(1, 33)} <= names
    assert {"C2^2", "C2^3", "C3^2", "C3^3", "Q8", "Q16", "S3", "S4", "S5", "A4", "A5", "SL(2,3)",
            "F20", "F21", "S3xC5"} <= names
    assert {f"D{2 * n}" for n in range(3, 13)} <= names


def test_catalog_examples():
    corpus = builtin_corpus()
    assert any(G.order == 60 and radical(G, SOLVABLE).is_trivial for G in corpus)
    assert any(G.order == 6 and not G.is_abelian for G in corpus)
    assert is_quaternion_Q8(builtin_group("Q8")) and is_quaternion_Q8(builtin_group("Q8table"))
    assert not is_quaternion_Q8(builtin_group("D8"))


def test_catalog_semidirects_have_nontrivial_action():
    for name in ("C3:C4", "V4:C3", "F20", "F21"):
        assert not builtin_group(name).is_abelian


# -- cache -----------------------------------------------------------------------------------


def test_lattice_round_trip(tmp_path):
    D8 = builtin_group("D8")
    store = CacheStore(tmp_path)
    store.store_lattice(enumerate_lattice(D8))
    lat = store.load_lattice(D8)
    assert [H.mask for H in lat.subgroups] == [H.mask for H in enumerate_lattice(D8).subgroups]
    assert lat.classes == enumerate_lattice(D8).classes


def test_cache_layout(tmp_path):
    D8 = builtin_group("D8")
    path = CacheStore(tmp_path).store_lattice(enumerate_lattice(D8))
    assert path == tmp_path / D8.id / "lattice.v1"


def test_older_version_detected(tmp_path):
    D8 = builtin_group("D8")
    CacheStore(tmp_path, version=0).store_lattice(enumerate_lattice(D8))
    with pytest.raises(CacheVersionMismatch):
        CacheStore(tmp_path).load_lattice(D8)


def test_corruption_detected_and_recomputed(tmp_path):
    D8 = builtin_group("D8")
    store = CacheStore(tmp_path)
    path = store.store_lattice(enumerate_lattice(D8))
    blob = json.loads(path.read_text())
    blob["payload"]["subgroups"][3] = "ff"
    path.write_text(json.dumps(blob))
    with pytest.raises(CorruptCache):
        store.load_lattice(D8)
    path.write_text("{not json")
    with pytest.raises(CorruptCache):
        store.load_lattice(D8)
    with pytest.warns(RuntimeWarning):
        lat = store.lattice(D8)
    assert len(lat.subgroups) == 10 and store.stats["rejected"] == 1
    assert store.load_lattice(D8) is not None


def test_structural_recheck_rejects_consistent_lie(tmp_path):
    D8 = builtin_group("D8")
    store = CacheStore(tmp_path)
    lat = enumerate_lattice(D8)
    payload = {"order": 8, "subgroups": [format(H.mask, "x") for H in lat.subgroups[:-2]] + ["7"],
               "classes": [[i] for i in range(len(lat.subgroups) - 1)]}
    store.store(D8.id, "lattice", payload)
    with pytest.raises(CorruptCache):
        store.load_lattice(D8)


def test_cold_and_warm_cache_agree(tmp_path):
    groups = [builtin_group(n) for n in ("S3", "D8", "A4", "Q8")]
    store = CacheStore(tmp_path)
    for G in groups:
        store.lattice(G)
    cold = [r.to_dict() for r in run_verification(groups, "ThmD,Lem2.1")]
    for G in groups:
        store.lattice(G)
    warm = [r.to_dict() for r in run_verification(groups, "ThmD,Lem2.1")]
    strip = lambda rs: [{k: v for k, v in r.items() if k != "timing"} for r in rs]  # noqa: E731
    assert strip(cold) == strip(warm) and store.stats["hits"] == len(groups)
