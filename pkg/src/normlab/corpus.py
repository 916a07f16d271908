"""Group descriptors, manifests, the built-in catalog and the on-disk cache."""

from __future__ import annotations

import hashlib
import json
import os
import re
import tempfile
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from normlab.group import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    GroupError,
    OrderCapExceeded,
    Subgroup,
    build_from_permutations,
    direct_product,
    from_table,
    semidirect_product,
)
from normlab.lattice import Lattice, class_sizes_consistent, conjugates, install_lattice

SCHEMA_VERSION = 1
CACHE_VERSION = 1
CACHE_KINDS = ("lattice", "chief_series", "norm_results")


class CorpusError(Exception):
    pass


class ParseError(CorpusError, ValueError):
    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


class ValidationError(CorpusError, ValueError):
    pass


class CapExceeded(ValidationError):
    pass


class UnknownGroup(CorpusError, KeyError):
    pass


class CacheVersionMismatch(CorpusError):
    pass


class CorruptCache(CorpusError):
    pass


# -- descriptors -------------------------------------------------------------------


_CONSTRUCTIONS = ("named", "perms", "table", "product", "semidirect", "ref")
FAMILIES = {
    "cyclic": 1, "elementary": 2, "dihedral": 1, "quaternion": 1, "symmetric": 1,
    "alternating": 1, "sl23": 0, "frobenius": 1,
}


@dataclass(frozen=True)
class GroupDescriptor:
    """A named construction recipe; ``construction`` has exactly one key from _CONSTRUCTIONS."""

    name: str
    construction: dict

    def to_dict(self) -> dict:
        return {"name": self.name, "construction": self.construction}


@dataclass(frozen=True)
class CorpusManifest:
    groups: tuple[GroupDescriptor, ...] = ()
    cap: int | None = None
    provenance: str | None = None
    schema_version: int = SCHEMA_VERSION

    def names(self) -> list[str]:
        return [d.name for d in self.groups]

    def get(self, name: str) -> GroupDescriptor:
        for d in self.groups:
            if d.name == name:
                return d
        raise UnknownGroup(name)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"schema_version": self.schema_version}
        if self.cap is not None:
            out["cap"] = self.cap
        if self.provenance is not None:
            out["provenance"] = self.provenance
        out["groups"] = [d.to_dict() for d in self.groups]
        return out


def _validate_construction(c: Any, where: str) -> None:
    if not isinstance(c, dict) or len(c) != 1 or next(iter(c)) not in _CONSTRUCTIONS:
        raise ValidationError(f"{where}: construction must have exactly one of {_CONSTRUCTIONS}")
    kind, body = next(iter(c.items()))
    if kind == "ref":
        if not isinstance(body, str):
            raise ValidationError(f"{where}: ref must be a group name")
    elif kind == "named":
        fam = body.get("family") if isinstance(body, dict) else None
        if fam not in FAMILIES:
            raise ValidationError(f"{where}: unknown family {fam!r}")
        params = body.get("params", [])
        if not isinstance(params, list) or len(params) != FAMILIES[fam] or not all(
                isinstance(p, int) and p >= 1 for p in params):
            raise ValidationError(f"{where}: family {fam} takes {FAMILIES[fam]} positive integer params")
    elif kind == "perms":
        if not isinstance(body, dict) or not isinstance(body.get("degree"), int) or body["degree"] < 0:
            raise ValidationError(f"{where}: perms needs an integer degree")
        if not isinstance(body.get("gens", []), list) or not all(isinstance(g, str) for g in body.get("gens", [])):
            raise ValidationError(f"{where}: perms gens must be strings")
    elif kind == "table":
        if not isinstance(body, dict) or not isinstance(body.get("order"), int):
            raise ValidationError(f"{where}: table needs an integer order")
        flat = body.get("table")
        if not isinstance(flat, list) or len(flat) != body["order"] ** 2:
            raise ValidationError(f"{where}: table must list order^2 entries")
    elif kind == "product":
        if not isinstance(body, list) or len(body) != 2:
            raise ValidationError(f"{where}: product takes two constructions")
        for i, part in enumerate(body):
            _validate_construction(part, f"{where}.product[{i}]")
    elif kind == "semidirect":
        if not isinstance(body, dict) or not {"N", "H", "action"} <= set(body):
            raise ValidationError(f"{where}: semidirect needs N, H and action")
        _validate_construction(body["N"], f"{where}.N")
        _validate_construction(body["H"], f"{where}.H")
        act = body["action"]
        ok = act == "trivial" or (isinstance(act, dict) and len(act) == 1 and (
            isinstance(act.get("power"), int) or isinstance(act.get("conjugators"), list)))
        if not ok:
            raise ValidationError(f"{where}: action must be 'trivial', {{power: k}} or {{conjugators: [...]}}")


def _descriptor(obj: Any, line: int) -> GroupDescriptor:
    if not isinstance(obj, dict) or not isinstance(obj.get("name"), str) or "construction" not in obj:
        raise ParseError("each group needs a string name and a construction", line)
    try:
        _validate_construction(obj["construction"], obj["name"])
    except ValidationError as e:
        raise ParseError(str(e), line) from None
    return GroupDescriptor(obj["name"], obj["construction"])


def _json(text: str, line_offset: int = 0) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno + line_offset, e.colno) from None


def parse_manifest(text: str) -> CorpusManifest:
    """Parse a manifest: one JSON object, or JSON lines (header line optional).

    Blank text is the empty corpus.
    """
    if not text.strip():
        return CorpusManifest()
    stripped = text.lstrip()
    lines = text.splitlines()
    multi = [i for i, ln in enumerate(lines) if ln.strip() and not ln.strip().startswith("#")]
    whole = None
    if stripped.startswith("{"):
        try:
            whole = json.loads(text)
        except json.JSONDecodeError:
            if len(multi) <= 1:
                _json(text)
    if isinstance(whole, dict) and "groups" in whole:
        return _manifest_from(whole, {})
    # JSON lines
    header: dict = {}
    groups = []
    for i in multi:
        obj = _json(lines[i], line_offset=i)
        if isinstance(obj, dict) and "schema_version" in obj and "construction" not in obj:
            header = obj
            continue
        groups.append(_descriptor(obj, i + 1))
    return _finish(groups, header)


def _manifest_from(obj: dict, _) -> CorpusManifest:
    groups = obj.get("groups")
    if not isinstance(groups, list):
        raise ParseError("groups must be a list")
    return _finish([_descriptor(g, 1) for g in groups], obj)


def _finish(groups: list[GroupDescriptor], header: dict) -> CorpusManifest:
    version = header.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ValidationError(f"unsupported schema_version {version}")
    names = [g.name for g in groups]
    dup = {n for n in names if names.count(n) > 1}
    if dup:
        raise ValidationError(f"duplicate group names: {sorted(dup)}")
    cap = header.get("cap")
    if cap is not None and (not isinstance(cap, int) or cap < 1):
        raise ValidationError("cap must be a positive integer")
    return CorpusManifest(tuple(groups), cap, header.get("provenance"), version)


def dump_manifest(m: CorpusManifest) -> str:
    return json.dumps(m.to_dict(), indent=1, sort_keys=True) + "\n"


# -- permutation notation ----------------------------------------------------------

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int) -> list[int]:
    """Cycle notation "(1 2 3)(4 5)" or image list "[2,3,1,5,4]" (1-based) -> 0-based images."""
    s = text.strip()
    if s.startswith("["):
        try:
            imgs = json.loads(s)
        except json.JSONDecodeError as e:
            raise ValidationError(f"bad image list {text!r}: {e.msg}") from None
        if not isinstance(imgs, list) or len(imgs) != degree or not all(isinstance(x, int) for x in imgs):
            raise ValidationError(f"image list {text!r} must have {degree} integers")
        img = [x - 1 for x in imgs]
        if sorted(img) != list(range(degree)):
            raise ValidationError(f"image list {text!r} is not a bijection (non-bijective)")
        return img
    if _CYCLE.sub("", s).strip():
        raise ValidationError(f"cannot parse permutation {text!r}")
    img = list(range(degree))
    seen: set[int] = set()
    for body in _CYCLE.findall(s):
        pts = [int(t) for t in body.replace(",", " ").split()]
        if any(p < 1 or p > degree for p in pts):
            raise ValidationError(f"point out of range 1..{degree} in {text!r}")
        if seen & set(pts) or len(set(pts)) != len(pts):
            raise ValidationError(f"cycles in {text!r} are not disjoint")
        seen |= set(pts)
        for i, p in enumerate(pts):
            img[p - 1] = pts[(i + 1) % len(pts)] - 1
    return img


# -- named families -----------------------------------------------------------------


def _cycle_perm(n: int) -> list[int]:
    return [(i + 1) % n for i in range(n)]


def _table_cyclic(n: int) -> np.ndarray:
    a = np.arange(n)
    return (a[:, None] + a[None, :]) % n


def dicyclic(n: int, name: str, cap: int) -> FiniteGroup:
    """Generalized quaternion of order n (a power of two >= 8): <a, b | a^(n/2), b^2 = a^(n/4), a^b = a^-1>."""
    m = n // 2
    # element (i, e) = a^i b^e, index e*m + i
    T = np.empty((n, n), dtype=np.int64)
    for e1 in (0, 1):
        for i1 in range(m):
            for e2 in (0, 1):
                for i2 in range(m):
                    if e1 == 0:
                        i, e = (i1 + i2) % m, e2
                    elif e2 == 0:
                        i, e = (i1 - i2) % m, 1
                    else:
                        i, e = (i1 - i2 + m // 2) % m, 0
                    T[e1 * m + i1, e2 * m + i2] = e * m + i
    return from_table(T, name=name, cap=cap)


def _build_named(family: str, params: list[int], name: str, cap: int) -> FiniteGroup:
    if family == "cyclic":
        n = params[0]
        if n > cap:
            raise CapExceeded(f"order {n} exceeds cap {cap}")
        return FiniteGroup(_table_cyclic(n), generators=[1] if n > 1 else [], name=name)
    if family == "elementary":
        p, k = params
        G = FiniteGroup(_table_cyclic(p), generators=[1], name=f"C{p}")
        out = G
        for _ in range(k - 1):
            out = direct_product(out, G, cap=cap)
        return FiniteGroup(out.table, generators=out.generator_indices, name=name, check=False)
    if family == "dihedral":
        n = params[0]
        if n < 2:
            raise ValidationError("dihedral family needs n >= 2")
        refl = [(-i) % n for i in range(n)]
        return build_from_permutations(n, [_cycle_perm(n), refl], cap=cap, name=name)
    if family == "quaternion":
        n = params[0]
        if n < 8 or n & (n - 1):
            raise ValidationError("quaternion family needs a power of two >= 8")
        return dicyclic(n, name, cap)
    if family in ("symmetric", "alternating"):
        n = params[0]
        if n < 2:
            return build_from_permutations(max(n, 1), [], cap=cap, name=name)
        if family == "symmetric":
            gens = [[1, 0] + list(range(2, n)), _cycle_perm(n)]
        else:
            if n < 3:
                return build_from_permutations(n, [], cap=cap, name=name)
            # the 3-cycles (1 2 k) generate A_n
            gens = []
            for k in range(2, n):
                img = list(range(n))
                img[0], img[1], img[k] = 1, k, 0
                gens.append(img)
        return build_from_permutations(n, gens, cap=cap, name=name)
    if family == "sl23":
        # SL(2,3) acting on the 8 nonzero vectors of F_3^2
        vecs = [(x, y) for x in range(3) for y in range(3) if (x, y) != (0, 0)]
        pos = {v: i for i, v in enumerate(vecs)}

        def act(M):
            return [pos[((M[0][0] * x + M[0][1] * y) % 3, (M[1][0] * x + M[1][1] * y) % 3)] for x, y in vecs]

        return build_from_permutations(8, [act([[1, 1], [0, 1]]), act([[1, 0], [1, 1]])], cap=cap, name=name)
    if family == "frobenius":
        n = params[0]
        if n == 20:
            return build_from_permutations(5, [[(x + 1) % 5 for x in range(5)], [(2 * x) % 5 for x in range(5)]],
                                           cap=cap, name=name)
        if n == 21:
            return build_from_permutations(7, [[(x + 1) % 7 for x in range(7)], [(2 * x) % 7 for x in range(7)]],
                                           cap=cap, name=name)
        raise ValidationError("frobenius family supports orders 20 and 21")
    raise ValidationError(f"unknown family {family}")


# -- loading -----------------------------------------------------------------------


def _extend_action(N: FiniteGroup, H: FiniteGroup, gen_images: list[np.ndarray]) -> np.ndarray:
    """Extend automorphisms given on H's generators to all of H (left action)."""
    phi = np.full((H.order, N.order), -1, dtype=np.int64)
    phi[0] = np.arange(N.order)
    frontier = [0]
    while frontier:
        nxt = []
        for h in frontier:
            for g, img in zip(H.generator_indices, gen_images):
                hg = int(H.table[h, g])
                if phi[hg, 0] < 0:
                    phi[hg] = phi[h][img]
                    nxt.append(hg)
        frontier = nxt
    return phi


def _semidirect(body: dict, name: str, cap: int, resolve) -> FiniteGroup:
    N = resolve(body["N"], f"{name}.N")
    H = resolve(body["H"], f"{name}.H")
    act = body["action"]
    if act == "trivial":
        phi = np.tile(np.arange(N.order), (H.order, 1))
    elif "power" in act:
        k = act["power"]
        img = np.array([N.power(n, k) for n in range(N.order)], dtype=np.int64)
        if len(H.generator_indices) != 1:
            raise ValidationError(f"{name}: power action needs a cyclic H with one generator")
        phi = _extend_action(N, H, [img])
    else:
        if N.perms is None:
            raise ValidationError(f"{name}: conjugator action needs a permutation N")
        conj = act["conjugators"]
        if len(conj) != len(H.generator_indices):
            raise ValidationError(f"{name}: one conjugator per generator of H is required")
        code = {tuple(p): i for i, p in enumerate(N.perms.tolist())}
        imgs = []
        for c in conj:
            cp = np.array(parse_permutation(c, N.degree))
            cinv = np.argsort(cp)
            # n -> c^-1 n c as maps: x -> c(n(c^-1(x)))
            try:
                imgs.append(np.array([code[tuple(cp[p[cinv]].tolist())] for p in N.perms]))
            except KeyError:
                raise ValidationError(f"{name}: conjugator {c} does not normalize N") from None
        phi = _extend_action(N, H, imgs)
    if (phi < 0).any():
        raise ValidationError(f"{name}: could not extend the action to all of H")
    try:
        return semidirect_product(N, H, phi, name=name, cap=cap)
    except GroupError as e:
        raise ValidationError(f"{name}: {e}") from None


def load_group(desc: GroupDescriptor, *, cap: int = DEFAULT_ORDER_CAP,
               known: dict[str, FiniteGroup] | None = None) -> FiniteGroup:
    """Build and validate the group a descriptor describes."""
    known = {} if known is None else known

    def resolve(c: dict, name: str) -> FiniteGroup:
        kind, body = next(iter(c.items()))
        try:
            if kind == "ref":
                if body in known:
                    return known[body]
                cat = builtin_catalog()
                if body in cat.names():
                    return load_group(cat.get(body), cap=cap)
                raise ValidationError(f"{name}: unknown group reference {body!r}")
            if kind == "named":
                return _build_named(body["family"], list(body.get("params", [])), name, cap)
            if kind == "perms":
                deg = body["degree"]
                gens = [parse_permutation(g, deg) for g in body.get("gens", [])]
                return build_from_permutations(deg, gens, cap=cap, name=name)
            if kind == "table":
                arr = np.array(body["table"]).reshape(body["order"], body["order"])
                return from_table(arr, name=name, cap=cap)
            if kind == "product":
                A = resolve(body[0], f"{name}.0")
                B = resolve(body[1], f"{name}.1")
                return direct_product(A, B, name=name, cap=cap)
            return _semidirect(body, name, cap, resolve)
        except ValidationError:
            raise
        except OrderCapExceeded as e:
            raise CapExceeded(f"{name}: {e}") from None
        except (GroupError, ValueError) as e:
            raise ValidationError(f"{name}: {e}") from None

    G = resolve(desc.construction, desc.name)
    if G.name != desc.name:
        G = FiniteGroup(G.table, generators=G.generator_indices, perms=G.perms, name=desc.name,
                        components=G.components, check=False)
    return G


def load_corpus(m: CorpusManifest, *, cap: int | None = None) -> list[FiniteGroup]:
    cap = cap or m.cap or DEFAULT_ORDER_CAP
    known: dict[str, FiniteGroup] = {}
    out = []
    for d in m.groups:
        G = load_group(d, cap=cap, known=known)
        known[d.name] = G
        out.append(G)
    return out


# -- the built-in catalog ------------------------------------------------------------


def _named(family: str, *params: int) -> dict:
    return {"named": {"family": family, "params": list(params)}}


def _catalog_entries() -> list[GroupDescriptor]:
    out = [GroupDescriptor(f"C{n}", _named("cyclic", n)) for n in range(1, 33)]
    out += [GroupDescriptor("C2^2", _named("elementary", 2, 2)), GroupDescriptor("C2^3", _named("elementary", 2, 3)),
            GroupDescriptor("C3^2", _named("elementary", 3, 2)), GroupDescriptor("C3^3", _named("elementary", 3, 3))]
    out += [GroupDescriptor(f"D{2 * n}", _named("dihedral", n)) for n in range(3, 13)]
    out += [
        GroupDescriptor("Q8", _named("quaternion", 8)),
        GroupDescriptor("Q16", _named("quaternion", 16)),
        GroupDescriptor("S3", {"perms": {"degree": 3, "gens": ["(1 2)", "(1 2 3)"]}}),
        GroupDescriptor("S4", {"perms": {"degree": 4, "gens": ["(1 2)", "(1 2 3 4)"]}}),
        GroupDescriptor("S5", {"perms": {"degree": 5, "gens": ["(1 2)", "(1 2 3 4 5)"]}}),
        GroupDescriptor("A4", {"perms": {"degree": 4, "gens": ["(1 2 3)", "(1 2)(3 4)"]}}),
        GroupDescriptor("A5", {"perms": {"degree": 5, "gens": ["(1 2 3)", "(1 2 3 4 5)"]}}),
        GroupDescriptor("SL(2,3)", _named("sl23")),
        GroupDescriptor("F20", _named("frobenius", 20)),
        GroupDescriptor("F21", {"semidirect": {"N": _named("cyclic", 7), "H": _named("cyclic", 3),
                                               "action": {"power": 2}}}),
        GroupDescriptor("S3xC5", {"product": [{"ref": "S3"}, _named("cyclic", 5)]}),
        GroupDescriptor("C3:C4", {"semidirect": {"N": _named("cyclic", 3), "H": _named("cyclic", 4),
                                                 "action": {"power": 2}}}),
        GroupDescriptor("V4:C3", {"semidirect": {
            "N": {"perms": {"degree": 4, "gens": ["(1 2)(3 4)", "(1 3)(2 4)"]}},
            "H": _named("cyclic", 3),
            "action": {"conjugators": ["(2 3 4)"]}}}),
        GroupDescriptor("Q8table", {"table": {"order": 8, "table": _q8_flat()}}),
        GroupDescriptor("D8xC3", {"product": [{"ref": "D8"}, _named("cyclic", 3)]}),
        GroupDescriptor("A4xC5", {"product": [{"ref": "A4"}, _named("cyclic", 5)]}),
    ]
    return out


def _q8_flat() -> list[int]:
    # unit quaternions +-1, +-i, +-j, +-k with index = 2*unit + sign
    mult = {("1", u): (u, 1) for u in "1ijk"}
    mult.update({(u, "1"): (u, 1) for u in "1ijk"})
    mult.update({("i", "i"): ("1", -1), ("j", "j"): ("1", -1), ("k", "k"): ("1", -1),
                 ("i", "j"): ("k", 1), ("j", "k"): ("i", 1), ("k", "i"): ("j", 1),
                 ("j", "i"): ("k", -1), ("k", "j"): ("i", -1), ("i", "k"): ("j", -1)})
    units = "1ijk"
    flat = []
    for a in range(8):
        for b in range(8):
            ua, sa = units[a // 2], -1 if a % 2 else 1
            ub, sb = units[b // 2], -1 if b % 2 else 1
            u, s = mult[(ua, ub)]
            s *= sa * sb
            flat.append(2 * units.index(u) + (1 if s < 0 else 0))
    return flat


_CATALOG: CorpusManifest | None = None


def builtin_catalog() -> CorpusManifest:
    """Small groups used throughout the test-suite and the verification corpus."""
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = CorpusManifest(tuple(_catalog_entries()), provenance="built-in catalog")
    return _CATALOG


_LOADED: dict[str, FiniteGroup] = {}


def builtin_group(name: str) -> FiniteGroup:
    """Load one catalog group by name (memoized per process)."""
    if name not in _LOADED:
        cat = builtin_catalog()
        if name not in cat.names():
            raise UnknownGroup(name)
        _LOADED[name] = load_group(cat.get(name))
    return _LOADED[name]


def builtin_corpus(max_order: int | None = None) -> list[FiniteGroup]:
    groups = [builtin_group(n) for n in builtin_catalog().names()]
    return [G for G in groups if max_order is None or G.order <= max_order]


# -- cache ---------------------------------------------------------------------------


def _checksum(payload: Any) -> str:
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


@dataclass
class CacheStore:
    """Self-validating blobs under ``<root>/<group id>/<kind>.v<N>``."""

    root: Path
    version: int = CACHE_VERSION
    stats: dict = field(default_factory=lambda: {"hits": 0, "misses": 0, "rejected": 0})

    def __post_init__(self):
        self.root = Path(self.root)

    def path(self, gid: str, kind: str) -> Path:
        return self.root / gid / f"{kind}.v{self.version}"

    def store(self, gid: str, kind: str, payload: Any) -> Path:
        if kind not in CACHE_KINDS:
            raise ValueError(f"unknown cache kind {kind}")
        target = self.path(gid, kind)
        target.parent.mkdir(parents=True, exist_ok=True)
        blob = {"version": self.version, "group_id": gid, "kind": kind,
                "checksum": _checksum(payload), "payload": payload}
        fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{kind}.")
        with os.fdopen(fd, "w") as fh:
            json.dump(blob, fh, sort_keys=True)
        os.replace(tmp, target)
        return target

    def load(self, gid: str, kind: str) -> Any | None:
        """Payload, or None when absent. Raises CacheVersionMismatch / CorruptCache."""
        target = self.path(gid, kind)
        if not target.exists():
            others = sorted((self.root / gid).glob(f"{kind}.v*")) if (self.root / gid).exists() else []
            if others:
                raise CacheVersionMismatch(f"{others[0].name} is not version {self.version}")
            return None
        try:
            blob = json.loads(target.read_text())
            payload = blob["payload"]
            ok = (blob["version"] == self.version and blob["group_id"] == gid and blob["kind"] == kind
                  and blob["checksum"] == _checksum(payload))
        except (ValueError, KeyError, TypeError) as e:
            raise CorruptCache(f"{target}: {e}") from None
        if not ok:
            if isinstance(blob, dict) and blob.get("version") != self.version:
                raise CacheVersionMismatch(f"{target}: version {blob.get('version')}")
            raise CorruptCache(f"{target}: checksum or header mismatch")
        return payload

    # lattice helpers

    def store_lattice(self, lat: Lattice) -> Path:
        payload = {"order": lat.group.order,
                   "subgroups": [format(H.mask, "x") for H in lat.subgroups],
                   "classes": [list(c) for c in lat.classes]}
        return self.store(lat.group.id, "lattice", payload)

    def load_lattice(self, G: FiniteGroup) -> Lattice | None:
        payload = self.load(G.id, "lattice")
        if payload is None:
            return None
        try:
            lat = _lattice_from_payload(G, payload)
        except (ValueError, KeyError, TypeError, IndexError) as e:
            raise CorruptCache(f"lattice of {G.name}: {e}") from None
        return lat

    def lattice(self, G: FiniteGroup) -> Lattice:
        """Cached lattice, installed into G; recomputed (with a warning) when the blob is bad."""
        from normlab.lattice import enumerate_lattice

        try:
            lat = self.load_lattice(G)
        except (CacheVersionMismatch, CorruptCache) as e:
            warnings.warn(f"recomputing lattice of {G.name}: {e}", RuntimeWarning, stacklevel=2)
            self.stats["rejected"] += 1
            lat = None
        if lat is not None:
            self.stats["hits"] += 1
            install_lattice(G, lat)
            return enumerate_lattice(G)
        self.stats["misses"] += 1
        lat = enumerate_lattice(G)
        self.store_lattice(lat)
        return lat


def _lattice_from_payload(G: FiniteGroup, payload: dict) -> Lattice:
    if payload["order"] != G.order:
        raise ValueError("order mismatch")
    masks = [int(h, 16) for h in payload["subgroups"]]
    subs = tuple(Subgroup(G, m) for m in masks)
    classes = tuple(tuple(int(i) for i in c) for c in payload["classes"])
    lat = Lattice(G, subs, classes)
    # structural re-check before use
    if len(set(masks)) != len(masks) or 1 not in masks or G.all_mask not in masks:
        raise ValueError("subgroup list must be distinct and contain 1 and G")
    if sorted(i for c in classes for i in c) != list(range(len(subs))):
        raise ValueError("classes do not partition the subgroups")
    for H in subs:
        if G.order % H.order:
            raise ValueError("subgroup order does not divide the group order")
        if G._closure_mask(H.generators) != H.mask:
            raise ValueError("listed subgroup is not closed")
    for c in classes:
        if sorted(conjugates(G, subs[c[0]])) != sorted(subs[i].mask for i in c):
            raise ValueError("conjugacy class mismatch")
    if not class_sizes_consistent(lat):
        raise ValueError("class sizes inconsistent")
    return lat


__all__ = [
    "CACHE_KINDS", "CACHE_VERSION", "CacheStore", "CapExceeded", "CacheVersionMismatch", "CorpusManifest",
    "CorruptCache", "GroupDescriptor", "ParseError", "SCHEMA_VERSION", "UnknownGroup",
    "ValidationError", "builtin_catalog", "builtin_corpus", "builtin_group", "dicyclic",
    "dump_manifest", "load_corpus", "load_group", "parse_manifest", "parse_permutation",
]
