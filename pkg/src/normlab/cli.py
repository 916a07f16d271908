"""norm-lab: group information, single computations and verification runs.

Exit codes: 0 success, 1 some proposition failed, 2 bad input (parse,
configuration, unknown group or proposition), 3 order cap or subgroup
budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
import warnings
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from normlab import lattice as lattice_mod
from normlab.classes import (
    ALL_PRIMES,
    ONE,
    ClassError,
    ClassParseError,
    PrimeSet,
    fitting_length_or_none,
    parse_class,
    radical,
    residual,
)
from normlab.corpus import (
    CapExceeded,
    CacheStore,
    CorpusError,
    UnknownGroup,
    builtin_catalog,
    builtin_group,
    load_corpus,
    parse_manifest,
)
from normlab.group import DEFAULT_ORDER_CAP, FiniteGroup, GroupError, OrderCapExceeded, Subgroup
from normlab.harness import (
    REGISTRY,
    Context,
    UnknownProposition,
    comp_class,
    run_verification,
    select,
    summarize,
)
from normlab.lattice import (
    LatticeBudgetExceeded,
    enumerate_lattice,
    frattini_subgroup,
    normal_subgroups,
)
from normlab.norms import hf_norm, int_x, norm_series
from normlab.series import chief_series, fitting_subgroup, hypercentre, psi_p

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3
CACHE_ENV = "NORMLAB_CACHE_DIR"
QUANTITIES = ("norm", "norm-series", "hypercentre", "residual", "radical", "int", "psi")


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    builtin: list[str] = field(default_factory=list)
    builtin_corpus: bool = False
    corpus: list[Path] = field(default_factory=list)
    props: list[str] = field(default_factory=list)
    F: list = field(default_factory=list)
    H: list = field(default_factory=list)
    pi: list = field(default_factory=list)
    cap: int = DEFAULT_ORDER_CAP
    budget: int = lattice_mod.DEFAULT_SUBGROUP_BUDGET
    jobs: int = 1
    fmt: str = "json"
    cache_dir: Path | None = None
    output: Path | None = None
    emit_elements: bool = False
    allow_evidence: bool = False


def _parse_classes(texts, flag):
    out = []
    for t in texts or []:
        try:
            out.append(parse_class(t))
        except ClassParseError as e:
            raise ConfigError(f"--{flag} {t!r}: {e}") from None
    return out


def _parse_pis(texts):
    out = []
    for t in texts or []:
        try:
            out.append(PrimeSet.parse(t))
        except (ClassParseError, ValueError) as e:
            raise ConfigError(f"--pi {t!r}: {e}") from None
    return out


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    """Validate every flag before any group is built."""
    if getattr(ns, "cap", None) is not None and ns.cap < 1:
        raise ConfigError("--cap must be positive")
    if getattr(ns, "budget", None) is not None and ns.budget < 1:
        raise ConfigError("--budget must be positive")
    if getattr(ns, "jobs", 1) < 1:
        raise ConfigError("--jobs must be positive")
    props = select(ns.props) if getattr(ns, "props", None) is not None else []
    cache = ns.cache_dir or os.environ.get(CACHE_ENV) or None
    return RunConfig(
        builtin=list(ns.builtin or []),
        builtin_corpus=bool(getattr(ns, "builtin_corpus", False)),
        corpus=[Path(p) for p in (getattr(ns, "corpus", None) or [])],
        props=props,
        F=_parse_classes(getattr(ns, "F", None), "F"),
        H=_parse_classes(getattr(ns, "H", None), "H"),
        pi=_parse_pis(getattr(ns, "pi", None)),
        cap=ns.cap or DEFAULT_ORDER_CAP,
        budget=ns.budget or lattice_mod.DEFAULT_SUBGROUP_BUDGET,
        jobs=getattr(ns, "jobs", 1),
        fmt=ns.format,
        cache_dir=Path(cache) if cache else None,
        output=Path(ns.output) if ns.output else None,
        emit_elements=ns.emit_elements,
        allow_evidence=getattr(ns, "allow_evidence", False),
    )


# -- group resolution ------------------------------------------------------------------


def _load_manifest(path: Path, cap: int) -> list[FiniteGroup]:
    try:
        text = path.read_text()
    except OSError as e:
        raise ConfigError(f"cannot read corpus {path}: {e.strerror}") from None
    return load_corpus(parse_manifest(text), cap=cap)


def _builtin(name: str, cap: int) -> FiniteGroup:
    G = builtin_group(name)
    if G.order > cap:
        raise CapExceeded(f"{name}: order {G.order} exceeds cap {cap}")
    return G


def resolve_groups(cfg: RunConfig, default_builtin: bool) -> list[FiniteGroup]:
    groups: list[FiniteGroup] = []
    if cfg.builtin_corpus or (default_builtin and not cfg.builtin and not cfg.corpus):
        groups += [_builtin(n, cfg.cap) for n in builtin_catalog().names()]
    for path in cfg.corpus:
        groups += _load_manifest(path, cfg.cap)
    groups += [_builtin(n, cfg.cap) for n in cfg.builtin]
    seen, out = set(), []
    for G in groups:
        if G.name not in seen:
            seen.add(G.name)
            out.append(G)
    return out


def prepare_lattices(groups: list[FiniteGroup], cfg: RunConfig) -> None:
    """Build (or load from cache) every lattice under the configured budget."""
    lattice_mod.DEFAULT_SUBGROUP_BUDGET = cfg.budget
    store = CacheStore(cfg.cache_dir) if cfg.cache_dir else None
    for G in groups:
        if store is not None:
            store.lattice(G)
        enumerate_lattice(G, cfg.budget)


def _single_group(ns, cfg: RunConfig) -> FiniteGroup:
    if ns.builtin:
        if len(ns.builtin) != 1:
            raise ConfigError("give exactly one --builtin group")
        return _builtin(ns.builtin[0], cfg.cap)
    if cfg.corpus:
        groups = resolve_groups(cfg, default_builtin=False)
        if ns.group:
            for G in groups:
                if G.name == ns.group:
                    return G
            raise UnknownGroup(ns.group)
        if len(groups) == 1:
            return groups[0]
        raise ConfigError("corpus holds several groups; pick one with --group")
    raise ConfigError("no group given (use --builtin NAME or --corpus FILE)")


# -- rendering -----------------------------------------------------------------------


def subgroup_record(G: FiniteGroup, H: Subgroup, emit_elements: bool) -> dict:
    rec = {"order": H.order, "generators": [G.word(g) for g in H.generators]}
    if emit_elements:
        rec["elements"] = [G.label(x) for x in H.members]
    return rec


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.output:
        cfg.output.write_text(text)
    else:
        sys.stdout.write(text)


def _md_table(header: list[str], rows: list[list]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(str(c) for c in r) + " |" for r in rows]
    return "\n".join(lines) + "\n"


def _flat(d: dict, prefix: str = "") -> list[tuple[str, object]]:
    out = []
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out += _flat(v, key + ".")
        else:
            out.append((key, v))
    return out


def render_record(rec: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rec, indent=1) + "\n"
    rows = [(k, json.dumps(v) if isinstance(v, (list, tuple)) else v) for k, v in _flat(rec)]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["field", "value"])
        w.writerows(rows)
        return buf.getvalue()
    return _md_table(["field", "value"], [list(r) for r in rows])


def render_reports(reports, header: dict, fmt: str) -> str:
    summary = summarize(reports)
    if fmt == "json":
        body = json.dumps({"summary": summary, "reports": [r.to_dict() for r in reports]}, indent=1)
        # the header sits alone on line 2 so everything after it is reproducible
        return "{\n\"header\": " + json.dumps(header, sort_keys=True) + ",\n" + body[2:] + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["prop", "group", "group_id", "params", "outcome", "basis", "reason"])
        for r in reports:
            d = r.to_dict()
            params = ";".join(f"{k}={v}" for k, v in d["params"].items())
            w.writerow([d["prop"], d["group"], d["group_id"], params, d["outcome"], d["basis"],
                        d.get("reason", "")])
        return buf.getvalue()
    out = ["# Verification report", "",
           f"{summary['total']} checks: {summary['pass']} pass, {summary['skip']} skip, {summary['fail']} fail", ""]
    out.append(_md_table(["proposition", "pass", "skip", "fail"],
                         [[k, v["pass"], v["skip"], v["fail"]] for k, v in summary["by_proposition"].items()]))
    groups = sorted({r.group for r in reports})
    props = sorted({r.prop_id for r in reports})
    cells = {}
    for r in reports:
        c = cells.setdefault((r.group, r.prop_id), [0, 0, 0])
        c[("pass", "skip", "fail").index(r.outcome)] += 1
    rows = [[g] + ["/".join(map(str, cells[(g, p)])) if (g, p) in cells else "" for p in props] for g in groups]
    out += ["", "Pass/Skip/Fail counts per group and proposition:", ""]
    out.append(_md_table(["group"] + props, rows))
    fails = [r for r in reports if r.failed]
    if fails:
        out += ["", "## Failures", ""]
        for r in fails:
            out.append(f"- {r.prop_id} on {r.group} {r.to_dict()['params']}: {json.dumps(r.witness)}")
    return "\n".join(out) + "\n"


# -- commands ------------------------------------------------------------------------


def cmd_group_info(ns, cfg: RunConfig) -> int:
    G = _single_group(ns, cfg)
    prepare_lattices([G], cfg)
    lat = enumerate_lattice(G)
    rec = {
        "name": G.name,
        "id": G.id,
        "order": G.order,
        "primes": list(G.primes),
        "subgroups": len(lat.subgroups),
        "conjugacy_classes_of_subgroups": len(lat.classes),
        "normal_subgroup_orders": [N.order for N in normal_subgroups(G)],
        "chief_factor_orders": list(chief_series(G).factor_orders),
        "frattini": subgroup_record(G, frattini_subgroup(G), cfg.emit_elements),
        "center": subgroup_record(G, G.center(), cfg.emit_elements),
        "fitting_subgroup": subgroup_record(G, fitting_subgroup(G), cfg.emit_elements),
        "fitting_length": fitting_length_or_none(G),
    }
    _emit(render_record(rec, cfg.fmt), cfg)
    return EXIT_OK


def _one(items, flag, default):
    if len(items) > 1:
        raise ConfigError(f"give at most one --{flag} for compute")
    return items[0] if items else default


def cmd_compute(ns, cfg: RunConfig) -> int:
    G = _single_group(ns, cfg)
    prepare_lattices([G], cfg)
    pi = _one(cfg.pi, "pi", None)
    F = _one(cfg.F, "F", None)
    H = _one(cfg.H, "H", None)
    q = ns.quantity
    rec: dict = {"group": G.name, "group_id": G.id, "quantity": q}
    if H is None and q in ("norm", "norm-series"):
        H = comp_class(pi) if pi is not None else ONE
    if q in ("norm", "norm-series", "residual", "int", "hypercentre") and F is None:
        raise ConfigError(f"compute {q} needs --F")
    if q == "norm":
        rec.update(H=str(H), F=str(F), result=subgroup_record(G, hf_norm(G, H, F), cfg.emit_elements))
    elif q == "norm-series":
        terms = norm_series(G, H, F).terms
        rec.update(H=str(H), F=str(F), terms=[subgroup_record(G, T, cfg.emit_elements) for T in terms])
    elif q == "hypercentre":
        pi = pi or ALL_PRIMES
        rec.update(pi=str(pi), F=str(F), result=subgroup_record(G, hypercentre(G, pi, F), cfg.emit_elements))
    elif q == "residual":
        rec.update(F=str(F), result=subgroup_record(G, residual(G, F), cfg.emit_elements))
    elif q == "radical":
        X = H or F
        if X is None:
            raise ConfigError("compute radical needs --H")
        rec.update(H=str(X), result=subgroup_record(G, radical(G, X), cfg.emit_elements))
    elif q == "int":
        rec.update(X=str(F), result=subgroup_record(G, int_x(G, F), cfg.emit_elements))
    elif q == "psi":
        if ns.p is None:
            raise ConfigError("compute psi needs --p")
        rec.update(p=ns.p, result=subgroup_record(G, psi_p(G, ns.p), cfg.emit_elements))
    _emit(render_record(rec, cfg.fmt), cfg)
    return EXIT_OK


def cmd_verify(ns, cfg: RunConfig) -> int:
    t0 = time.perf_counter()
    header = {"timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds")}
    if not cfg.props:
        reports = []
    else:
        groups = resolve_groups(cfg, default_builtin=True)
        prepare_lattices(groups, cfg)
        opts = {"F": cfg.F, "H": cfg.H, "pi": cfg.pi}
        ctx = Context(allow_evidence=cfg.allow_evidence)
        reports = run_verification(groups, cfg.props, opts, ctx, jobs=cfg.jobs)
    timings: dict[str, float] = {}
    for r in reports:
        timings[r.prop_id] = timings.get(r.prop_id, 0.0) + r.timing
    header["timings"] = {k: round(v, 3) for k, v in sorted(timings.items())}
    header["elapsed"] = round(time.perf_counter() - t0, 3)
    _emit(render_reports(reports, header, cfg.fmt), cfg)
    return EXIT_FAIL if any(r.failed for r in reports) else EXIT_OK


def cmd_props(ns, cfg: RunConfig) -> int:
    rows = [{"id": p.prop_id, "scope": p.scope, "summary": p.summary} for p in REGISTRY.values()]
    if cfg.fmt == "json":
        text = json.dumps(rows, indent=1) + "\n"
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, ["id", "scope", "summary"], lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    else:
        text = _md_table(["id", "scope", "summary"], [[r["id"], r["scope"], r["summary"]] for r in rows])
    _emit(text, cfg)
    return EXIT_OK


# -- argument parsing ------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, verify: bool = False) -> None:
    p.add_argument("--builtin", action="append", metavar="NAME", help="built-in group by name")
    p.add_argument("--corpus", action="append", metavar="FILE", help="group manifest (JSON or JSON lines)")
    if verify:
        p.add_argument("--builtin-corpus", action="store_true", help="every built-in group")
        p.add_argument("--props", metavar="IDS", help="comma-separated proposition ids or 'all'")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--allow-evidence", action="store_true",
                       help="let corpus evidence stand in for a boundary condition (reported as such)")
    else:
        p.add_argument("--group", metavar="NAME", help="group name inside --corpus")
    p.add_argument("--F", action="append", metavar="CLASS", help="class expression, e.g. 'N*U'")
    p.add_argument("--H", action="append", metavar="CLASS", help="Fitting class expression")
    p.add_argument("--pi", action="append", metavar="PRIMES", help="prime set: P, {2,3} or {2}'")
    p.add_argument("--cap", type=int, help=f"order cap (default {DEFAULT_ORDER_CAP})")
    p.add_argument("--budget", type=int, help="subgroup budget per lattice")
    p.add_argument("--format", choices=("json", "csv", "md"), default="json")
    p.add_argument("--output", metavar="FILE")
    p.add_argument("--cache-dir", metavar="DIR", help=f"lattice cache (default ${CACHE_ENV})")
    p.add_argument("--emit-elements", action="store_true", help="list subgroup elements")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="norm-lab", description="Norms and hypercentres of finite groups.")
    sub = parser.add_subparsers(dest="command", required=True)
    grp = sub.add_parser("group", help="group information")
    gsub = grp.add_subparsers(dest="action", required=True)
    info = gsub.add_parser("info", help="order, lattice size, series data")
    _common(info)
    info.set_defaults(handler=cmd_group_info)
    comp = sub.add_parser("compute", help="compute one subgroup")
    comp.add_argument("quantity", choices=QUANTITIES)
    comp.add_argument("--p", type=int, help="prime for psi")
    _common(comp)
    comp.set_defaults(handler=cmd_compute)
    ver = sub.add_parser("verify", help="run propositions over groups")
    _common(ver, verify=True)
    ver.set_defaults(handler=cmd_verify)
    props = sub.add_parser("props", help="list registered propositions")
    props.add_argument("--format", choices=("json", "csv", "md"), default="md")
    props.add_argument("--output", metavar="FILE")
    props.set_defaults(handler=cmd_props, builtin=None, cap=None, budget=None, cache_dir=None,
                       emit_elements=False)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    saved_budget = lattice_mod.DEFAULT_SUBGROUP_BUDGET
    try:
        cfg = config_from_args(ns)
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = lambda msg, *a, **k: print(f"warning: {msg}", file=sys.stderr)
            return ns.handler(ns, cfg)
    except (CapExceeded, OrderCapExceeded, LatticeBudgetExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except UnknownGroup as e:
        print(f"error: unknown group {e.args[0]!r}", file=sys.stderr)
        return EXIT_INPUT
    except UnknownProposition as e:
        print(f"error: unknown proposition {e.args[0]!r}", file=sys.stderr)
        return EXIT_INPUT
    except (ConfigError, CorpusError, ClassError, GroupError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        # the budget is process-global while a command runs; callers of main() keep theirs
        lattice_mod.DEFAULT_SUBGROUP_BUDGET = saved_budget


if __name__ == "__main__":
    sys.exit(main())
