"""Command line: run a scenario (file or catalog name), write JSON/CSV reports.

Exit codes: 0 every certificate passed, 1 a certificate failed (named on
stderr), 2 the scenario is malformed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import linfield as lf
from .algebra import algebra_report, blocks, build_algebra, matrix_algebra_radical, skew_iso
from .catalog import CATALOG, Scenario, SchemaError, catalog_scenario, load_scenario
from .gposet import GPoset, PosetError, euler_characteristic
from .homology import (
    DEFAULT_CEILING,
    VerificationError,
    complexity,
    envelope_and_factorization_dims,
    ext_dims,
    ext_table,
    finite_projdim_test,
    homology_report,
    hom_dim_check,
    in_H,
    minimal_resolution,
    ring_structure,
    yoneda_and_cup,
)
from .quillen import CSV_COLUMNS, enumerate_quillen_pairs, stratification_report
from .rep import FunctorModule, restriction, trivial_module
from .transporter import CategoryError, build_transporter, full_subcategory, product_category

__all__ = ["main", "run_scenario", "split_components", "LONG_COLUMNS", "SKEW_LIMIT", "CUP_DEGREE"]

SCHEMA = 1
SKEW_LIMIT = 64
RADICAL_LIMIT = 128
CUP_DEGREE = 6
LONG_COLUMNS = ("analysis", "module", "quantity", "index", "value")


class Certificates:
    def __init__(self):
        self.items: dict[str, bool] = {}

    def add(self, name: str, ok) -> bool:
        self.items[name] = bool(ok) and self.items.get(name, True)
        return bool(ok)

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.items.items() if not v]


# -- analyses ------------------------------------------------------------------------
def _build(scn: Scenario, cert: Certificates, rows):
    C, P, G, p = scn.category, scn.poset, scn.group, scn.p
    C.check_invariants()
    hom = [[len(C.hom[x][y]) for y in range(C.n_obj)] for x in range(C.n_obj)]
    out = {
        "objects": C.n_obj,
        "morphisms": C.n_mor,
        "group_order": G.n,
        "hom_sizes": hom,
        "iso_classes": [list(c) for c in C.iso_classes],
        "poset_dim": P.dim,
        "euler_characteristic": euler_characteristic(P),
        "ei": True,
    }
    cert.add("build.ei", C.is_ei)
    if scn.raw.get("poset", {}).get("builder") == "sp" and not scn.raw["poset"].get("cone"):
        cong = euler_characteristic(P) % p
        out["euler_mod_p"] = cong
        cert.add("build.brown_congruence", cong == 1 % p)
    if C.n_mor <= SKEW_LIMIT:
        try:
            iso = skew_iso(G, P, p, C)
            out["skew_pairs_checked"] = iso.pairs_checked
            cert.add("build.skew_iso", True)
        except ArithmeticError:
            cert.add("build.skew_iso", False)
    rows.append(("build", "", "objects", 0, C.n_obj))
    rows.append(("build", "", "morphisms", 0, C.n_mor))
    return out


def _blocks(scn: Scenario, cert: Certificates, rows):
    A = build_algebra(scn.category, scn.p, check=scn.category.n_mor <= SKEW_LIMIT)
    B = blocks(A)
    out = algebra_report(A, B)
    if A.dim <= RADICAL_LIMIT:
        J2 = matrix_algebra_radical(A.n, A.p, A.mul, A.left_matrix)
        same = J2.shape[0] == A.radical.shape[0] and lf.rank(np.concatenate([J2, A.radical]), A.p) == J2.shape[0] \
            if J2.shape[0] else A.radical.shape[0] == 0
        cert.add("blocks.radical_two_routes", same)
        out["radical_routes_agree"] = bool(same)
    for i, d in enumerate(B.dims):
        rows.append(("blocks", "", "block_dim", i, int(d)))
    return out


def _ext(scn: Scenario, cert: Certificates, rows):
    C, p, D = scn.category, scn.p, scn.D
    k = trivial_module(C, p)
    Rk = minimal_resolution(k, D + 1)
    cert.add("ext.resolution_k", Rk.verify())
    Ek = ext_table(Rk, k, D)
    Dc = min(D, CUP_DEGREE)
    prod = ring_structure(Ek, Dc)
    comm = True
    for (i, a, j, b), v in prod.items():
        if in_H(i, p) and in_H(j, p):
            w = prod[(j, b, i, a)]
            if not np.array_equal(v % p, (((-1) ** (i * j)) * w) % p):
                comm = False
    cert.add("ext.H_graded_commutative", comm)
    out = {"k,k": homology_report("k,k", Ek.dims), "modules": {}}
    for name, M in scn.modules.items():
        R = minimal_resolution(M, D + 1)
        cert.add(f"ext.resolution_{name}", R.verify())
        EM = ext_table(R, M, D)
        cert.add(f"ext.hom_{name}", hom_dim_check(M, M, EM.dims[0]))
        cup = yoneda_and_cup(Ek, M, Dc, EM=ext_table(R, M, Dc) if Dc < D else EM)
        cert.add(f"ext.cup_central_{name}", cup.central)
        est = complexity(M, D, res=R)
        doc = homology_report(f"{name},{name}", EM.dims, est, cup.annihilator_dims)
        out["modules"][name] = doc
        for n, d in enumerate(EM.dims):
            rows.append(("ext", name, "dim", n, d))
        for n, a in enumerate(cup.annihilator_dims):
            rows.append(("ext", name, "annihilator_dim", n, "" if a is None else a))
    for n, d in enumerate(Ek.dims):
        rows.append(("ext", "k,k", "dim", n, d))
    out["cup_degree"] = Dc
    return out


def _complexity(scn: Scenario, cert: Certificates, rows):
    out = {}
    for name, M in scn.modules.items():
        est = complexity(M, scn.D)
        ok, witness, length = finite_projdim_test(M)
        cert.add(f"complexity.zero_iff_terminated_{name}", (est.s == 0) == est.terminated)
        if ok:
            cert.add(f"complexity.gorenstein_bound_{name}", length is not None and length <= scn.poset.dim)
        out[name] = {"dims": list(est.dims), "complexity": est.s, "stable": est.stable,
                     "finite_projdim": ok, "witness": witness, "length": length}
        rows.append(("complexity", name, "complexity", 0, est.s))
        for n, d in enumerate(est.dims):
            rows.append(("complexity", name, "dim_P", n, d))
    return out


def _quillen(scn: Scenario, cert: Certificates, rows):
    pairs, classes = enumerate_quillen_pairs(scn.group, scn.poset, scn.p)
    covered = sorted(i for c in classes for i in c.members)
    cert.add("quillen.classes_partition", covered == list(range(len(pairs))))
    out = {
        "pairs": [{"subgroup": list(q.E.elements), "objects": list(q.objects), "rank": q.rank} for q in pairs],
        "classes": [{"members": c.members, "rank": c.rank, "weyl_order": c.weyl_order} for c in classes],
        "max_rank": max(q.rank for q in pairs),
    }
    rows.append(("quillen", "", "pairs", 0, len(pairs)))
    rows.append(("quillen", "", "classes", 0, len(classes)))
    return out


def _stratify(scn: Scenario, cert: Certificates, rows, strata_rows):
    rep = stratification_report(scn.group, scn.poset, scn.p, scn.modules, scn.D)
    for name, vd in rep.modules.items():
        cert.add(f"stratify.certificate_{name}", vd.ok)
        cert.add(f"stratify.stable_{name}", vd.stable)
        rows.append(("stratify", name, "variety_dimension", 0, vd.s))
    cert.add("stratify.subpair_consistent", rep.subpair_ok)
    strata_rows.extend(rep.rows)
    return rep.to_dict()


def _kunneth(scn: Scenario, cert: Certificates, rows):
    C, p, D = scn.category, scn.p, scn.D
    out = {}
    a = ext_dims(trivial_module(C, p), trivial_module(C, p), D)
    for label, C2 in scn.kunneth_with:
        b = ext_dims(trivial_module(C2, p), trivial_module(C2, p), D)
        CC = product_category(C, C2)
        c = ext_dims(trivial_module(CC, p), trivial_module(CC, p), D)
        conv = [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(D + 1)]
        cert.add(f"kunneth.{label}", c == conv)
        out[label] = {"left": a, "right": b, "product": c, "convolution": conv}
        for n, d in enumerate(c):
            rows.append(("kunneth", label, "dim", n, d))
    return out


def _hochschild(scn: Scenario, cert: Certificates, rows, ceiling: int):
    D = min(scn.D, 4)
    try:
        t = envelope_and_factorization_dims(scn.category, scn.p, D, ceiling)
    except OverflowError as exc:
        cert.add("hochschild-dims.ceiling", False)
        return {"error": str(exc)}
    cert.add("hochschild-dims.factorization_equals_category", t["factorization"] == t["category"])
    cert.add("hochschild-dims.hochschild_dominates", all(h >= c for h, c in zip(t["hochschild"], t["category"])))
    for key in ("factorization", "category", "hochschild", "hochschild_b0"):
        for n, d in enumerate(t.get(key, [])):
            rows.append(("hochschild-dims", key, "dim", n, d))
    t["degree"] = D
    return t


def run_scenario(scn: Scenario, ceiling: int = DEFAULT_CEILING):
    """Returns (report dict, long rows, strata rows, failed certificate names)."""
    cert = Certificates()
    rows, strata_rows = [], []
    results = {}
    for a in scn.analyses:
        try:
            if a == "build":
                results[a] = _build(scn, cert, rows)
            elif a == "blocks":
                results[a] = _blocks(scn, cert, rows)
            elif a == "ext":
                results[a] = _ext(scn, cert, rows)
            elif a == "complexity":
                results[a] = _complexity(scn, cert, rows)
            elif a == "quillen":
                results[a] = _quillen(scn, cert, rows)
            elif a == "stratify":
                results[a] = _stratify(scn, cert, rows, strata_rows)
            elif a == "kunneth":
                results[a] = _kunneth(scn, cert, rows)
            elif a == "hochschild-dims":
                results[a] = _hochschild(scn, cert, rows, ceiling)
        except (VerificationError, CategoryError, ArithmeticError, AssertionError) as exc:
            cert.add(f"{a}.error", False)
            results[a] = {"error": f"{type(exc).__name__}: {exc}"}
    doc = {
        "schema": SCHEMA,
        "scenario": scn.name,
        "prime": scn.p,
        "max_degree": scn.D,
        "results": results,
        "certificates": dict(sorted(cert.items.items())),
        "status": "ok" if not cert.failed else "fail",
    }
    return doc, rows, strata_rows, cert.failed


# -- components ---------------------------------------------------------------------------
def split_components(scn: Scenario) -> list[Scenario]:
    """One scenario per connected component of ``G∝P`` (a G-orbit of
    components of P), modules restricted."""
    C = scn.category
    out = []
    for objs in C.connected_components:
        objs = sorted(objs)
        P = scn.poset
        pos = {x: i for i, x in enumerate(objs)}
        act = np.array([[pos[int(P.act[g, x])] for x in objs] for g in range(P.act.shape[0])], dtype=np.int64)
        sub = GPoset(P.leq[np.ix_(objs, objs)], group=scn.group, act=act,
                     labels=[P.labels[x] for x in objs], check=False)
        Csub = build_transporter(scn.group, sub, check=False)
        _, inc = full_subcategory(C, objs)
        if inc.source.n_mor != Csub.n_mor:
            raise CategoryError("component subcategory does not match its transporter category")
        mods = {}
        for name, M in scn.modules.items():
            R = restriction(M, inc)
            mods[name] = FunctorModule(Csub, R.dims, R.mats, R.p, check=True, name=name)
        label = "+".join(map(str, objs))
        out.append(Scenario(f"{scn.name}[{label}]", scn.group, sub, scn.p, Csub, mods, scn.D, scn.analyses,
                            "split", scn.kunneth_with, dict(scn.raw)))
    return out


# -- output ----------------------------------------------------------------------------------
def _csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([r[c] for c in columns] if isinstance(r, dict) else list(r))
    return buf.getvalue()


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, default=_jsonable) + "\n"


def _jsonable(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def _read_scenario(arg: str) -> dict:
    path = Path(arg)
    if path.exists():
        try:
            return json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
    if arg in CATALOG:
        import copy

        return copy.deepcopy(CATALOG[arg])
    raise SchemaError(f"no scenario file or catalog entry named {arg!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="strata", description=__doc__.splitlines()[0])
    ap.add_argument("--scenario", help="scenario JSON file or catalog name")
    ap.add_argument("--max-degree", type=int, default=None, help="truncation degree D")
    ap.add_argument("--prime", type=int, default=None, help="override the prime")
    ap.add_argument("--out", default=".", help="output directory")
    ap.add_argument("--format", choices=("json", "csv", "both"), default="both")
    ap.add_argument("--components", choices=("reject", "split"), default=None)
    ap.add_argument("--ceiling", type=int, default=DEFAULT_CEILING, help="morphism ceiling for F(C) and C^e")
    ap.add_argument("--list-catalog", action="store_true", help="print catalog scenario names and exit")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.list_catalog:
        print("\n".join(sorted(CATALOG)))
        return 0
    if not args.scenario:
        print("error: --scenario is required", file=sys.stderr)
        return 2
    try:
        spec = _read_scenario(args.scenario)
        scn = load_scenario(spec, prime=args.prime, max_degree=args.max_degree, components=args.components)
        if not scn.category.is_connected:
            if scn.components == "reject":
                raise SchemaError(f"G∝P has {len(scn.category.connected_components)} connected components "
                                  "(use --components split)")
            parts = split_components(scn)
        else:
            parts = [scn]
    except (SchemaError, PosetError, CategoryError, ValueError) as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    docs, rows, strata_rows, failed = [], [], [], []
    for part in parts:
        d, r, s, f = run_scenario(part, args.ceiling)
        docs.append(d)
        rows.extend((part.name,) + tuple(x) for x in r)
        strata_rows.extend(dict(x, scenario=part.name) for x in s)
        failed.extend(f"{part.name}: {x}" for x in f)
    if len(docs) == 1:
        doc = docs[0]
    else:
        doc = {"schema": SCHEMA, "scenario": scn.name, "components": docs,
               "status": "ok" if not failed else "fail"}
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = scn.name
    if args.format in ("json", "both"):
        (out / f"{stem}.json").write_text(_dump(doc))
    if args.format in ("csv", "both"):
        (out / f"{stem}.csv").write_text(_csv(("scenario",) + LONG_COLUMNS, rows))
        if strata_rows:
            (out / f"{stem}-strata.csv").write_text(_csv(("scenario",) + CSV_COLUMNS, strata_rows))
    for f in failed:
        print(f"verification failure: {f}", file=sys.stderr)
    print(f"{stem}: {'ok' if not failed else 'FAILED'}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
