"""Command-line entry point.

Machine-readable JSON goes to standard output, a short human summary to
standard error.  Exit codes: 0 verified, 1 refuted, 2 error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

import numpy as np

from . import io
from .errors import CapExceeded, NoInvertibleFound, RankDeficient, SearchBudgetExceeded, SunadaError
from .gassmann import SCHEMA_VERSION, is_gassmann, search_pairs
from .perm_core import DEFAULT_CAP, conjugacy_classes, left_cosets, parse_cycles
from .spectral import (
    compare_quotients,
    random_generating_sets,
    schreier_quotient,
    symmetrize,
    verify_transplantation_on_graphs,
)
from .transplant import (
    class_sum,
    equivariance_residual,
    find_invertible_intertwiner,
    intertwiner_basis,
    is_equivariant,
    orthogonality_residual,
    orthogonalize,
    regular_module,
    transplantation,
    transplantation_composite,
    verify_commutation,
)

EXIT_OK, EXIT_REFUTED, EXIT_ERROR = 0, 1, 2

# groups above this order skip the regular-module transplantation stage
REGULAR_MODULE_LIMIT = 256


class _Reporter:
    def __init__(self, json_only=False, stream=None):
        self.json_only = json_only
        self.stream = stream or sys.stderr
        self.color = "NO_COLOR" not in os.environ and getattr(self.stream, "isatty", lambda: False)()

    def say(self, msg, ok=None):
        if self.json_only:
            return
        if ok is not None and self.color:
            code = "32" if ok else "31"
            msg = f"\033[{code}m{msg}\033[0m"
        print(msg, file=self.stream)


class _Timer:
    def __init__(self, enabled):
        self.enabled = enabled
        self.times = {}

    def stage(self, name):
        timer = self

        class _Ctx:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                timer.times[name] = round(1000 * (time.perf_counter() - self.t0), 3)

        return _Ctx()

    def report(self):
        return dict(self.times) if self.enabled else None


def _command_echo(args):
    keys = ["command", "group", "h1", "h2", "h", "gens", "order", "seed", "cap", "random_sets", "out"]
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def _emit(report):
    sys.stdout.write(io.dumps(report))


def _gens_indices(spec, G, text):
    strings = io.split_generator_list(text) if text else list(spec.default_gens or spec.generators)
    idx = []
    for c in strings:
        p = parse_cycles(c, spec.degree)
        if p not in G:
            raise io.GroupFileError(f"generator {c} is not in the group")
        idx.append(G.index(p))
    S = symmetrize(G, idx)
    if not S:
        raise io.GroupFileError("generating set is empty after removing the identity")
    return S


def _load(args):
    spec = io.load_group_file(args.group)
    G, subs = spec.build(cap=args.cap)
    return spec, G, subs


def _subgroup_pair(args, spec, subs):
    l1 = spec.subgroup_label(args.h1, spec.h1)
    l2 = spec.subgroup_label(args.h2, spec.h2)
    return l1, l2, subs[l1], subs[l2]


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify(args, out):
    spec, G, subs = _load(args)
    l1, l2, H1, H2 = _subgroup_pair(args, spec, subs)
    classes = conjugacy_classes(G)
    cert = is_gassmann(G, classes, H1, H2)
    if not cert.is_gassmann:
        verdict, reason = "refuted", "not_gassmann"
    elif cert.conjugacy_witness is not None:
        verdict, reason = "refuted", "conjugate"
    else:
        verdict, reason = "verified", None
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": _command_echo(args),
        "group": {"name": spec.name, "order": G.order, "class_sizes": classes.sizes},
        "h1": l1,
        "h2": l2,
        "certificate": cert.to_json(),
        "verdict": verdict,
        "reason": reason,
    }
    _emit(report)
    out.say(f"{spec.name}: |G|={G.order}, |{l1}|={H1.order}, |{l2}|={H2.order}")
    if verdict == "verified":
        out.say("Gassmann pair, not conjugate: verified", ok=True)
        return EXIT_OK
    if reason == "conjugate":
        out.say("Gassmann but conjugate (trivial pair): refuted", ok=False)
    else:
        out.say(f"profiles differ {cert.profile1.counts} vs {cert.profile2.counts}: refuted", ok=False)
    return EXIT_REFUTED


def run_full(args, out):
    """Whole pipeline; returns ``(report, exit_code)``."""
    timer = _Timer(getattr(args, "timings", False))
    with timer.stage("load"):
        spec, G, subs = _load(args)
        l1, l2, H1, H2 = _subgroup_pair(args, spec, subs)
        S = _gens_indices(spec, G, args.gens)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": _command_echo(args),
        "group": {"name": spec.name, "order": G.order},
        "h1": l1,
        "h2": l2,
        "generating_set": [G.elements[s].to_cycles() for s in S],
    }
    with timer.stage("certificate"):
        classes = conjugacy_classes(G)
        cert = is_gassmann(G, classes, H1, H2)
    report["certificate"] = cert.to_json()
    out.say(f"certificate: gassmann={cert.is_gassmann} conjugate={cert.conjugacy_witness is not None}",
            ok=cert.nontrivial)

    def finish(stage, error, code):
        report["stopped_at"] = stage
        report["error"] = error
        report["timings_ms"] = timer.report()
        return report, code

    with timer.stage("intertwiner"):
        X1, X2 = left_cosets(G, H1), left_cosets(G, H2)
        basis = intertwiner_basis(G, X1, X2)
        try:
            inter = find_invertible_intertwiner(basis, seed=args.seed)
        except NoInvertibleFound as exc:
            report["intertwiner"] = {
                "basis_size": len(basis),
                "found": False,
                "proved_impossible": bool(getattr(exc, "proved", False)),
            }
            out.say(f"intertwiner: NoInvertibleFound ({exc})", ok=False)
            return finish("intertwiner", f"NoInvertibleFound: {exc}", EXIT_REFUTED)
    summary = {"basis_size": len(basis), "found": True}
    summary.update(inter.to_json())
    summary["equivariant"] = is_equivariant(inter)
    report["intertwiner"] = summary
    out.say(f"intertwiner: phi={list(inter.phi)} det={inter.det}", ok=True)

    with timer.stage("unitary"):
        U = orthogonalize(inter)
        report["unitary"] = {
            "orthogonality_residual": f"{orthogonality_residual(U):.3e}",
            "equivariance_residual": f"{equivariance_residual(U, basis):.3e}",
        }

    with timer.stage("transplantation"):
        if G.order <= REGULAR_MODULE_LIMIT:
            V = regular_module(G)
            try:
                T = transplantation(V, H1, H2, inter)
                T2 = transplantation_composite(V, H1, H2, inter)
                comm = {
                    str(cid): verify_commutation(V, class_sum(V, c), H1, H2, T)
                    for cid, c in enumerate(classes.classes)
                }
                report["transplantation"] = {
                    "module": "regular",
                    "dimensions": list(T.dims),
                    "rank": T.rank,
                    "operator_matches_composite": bool(np.array_equal(T.matrix, T2.matrix)),
                    "commutation": comm,
                }
            except RankDeficient as exc:
                report["transplantation"] = {"module": "regular", "error": f"RankDeficient: {exc}"}
        else:
            report["transplantation"] = {"module": "regular", "skipped": f"|G| > {REGULAR_MODULE_LIMIT}"}

    with timer.stage("spectral"):
        spectral, zeta = compare_quotients(G, H1, H2, S)
        g1 = schreier_quotient(G, H1, S)
        report["graphs"] = {"vertices": g1.n, "degree": g1.generator_count}
        report["spectral"] = spectral.to_json()
        report["zeta"] = zeta.to_json()
        report["graph_transplantation"] = verify_transplantation_on_graphs(G, H1, H2, S, inter)
        scans = []
        for T_set in random_generating_sets(G, args.random_sets, args.seed) if args.random_sets else []:
            sp, zt = compare_quotients(G, H1, H2, T_set)
            scans.append({
                "generating_set": [G.elements[s].to_cycles() for s in T_set],
                "laplacian_equal": sp.equal,
                "zeta_equal": zt.equal,
                "graph_transplantation": verify_transplantation_on_graphs(G, H1, H2, T_set, inter),
            })
        if scans:
            report["random_generating_sets"] = scans
    out.say(f"spectral: laplacian equal={spectral.equal}, zeta equal={zeta.equal}",
            ok=spectral.equal and zeta.equal)

    verdicts = [
        cert.nontrivial,
        summary["equivariant"],
        spectral.equal,
        zeta.equal,
        report["graph_transplantation"],
        all(s["laplacian_equal"] and s["zeta_equal"] and s["graph_transplantation"] for s in scans),
    ]
    tp = report["transplantation"]
    if "commutation" in tp:
        verdicts += [tp["operator_matches_composite"], all(tp["commutation"].values())]
    elif "error" in tp:
        verdicts.append(False)
    report["all_verdicts_true"] = all(verdicts)
    report["timings_ms"] = timer.report()
    return report, EXIT_OK if all(verdicts) else EXIT_REFUTED


def cmd_full(args, out):
    report, code = run_full(args, out)
    _emit(report)
    out.say("full pipeline: " + ("verified" if code == EXIT_OK else "refuted"), ok=code == EXIT_OK)
    return code


def cmd_search(args, out):
    spec = io.load_group_file(args.group)
    G, _ = spec.build(cap=args.cap)
    pairs = search_pairs(
        G, args.order, max_generators=args.max_generators, budget=args.budget,
        exhaustive=args.exhaustive,
    )

    def members(H):
        return [G.elements[i].to_cycles() for i in H.member_indices]

    report = {
        "schema_version": SCHEMA_VERSION,
        "command": _command_echo(args),
        "group": {"name": spec.name, "order": G.order},
        "pairs": [
            {"h1": members(c.h1), "h2": members(c.h2), "certificate": c.to_json()}
            for c in pairs
        ],
    }
    _emit(report)
    out.say(f"{spec.name}: {len(pairs)} non-conjugate Gassmann pair(s)", ok=bool(pairs))
    return EXIT_OK if pairs else EXIT_REFUTED


def cmd_export_dot(args, out):
    spec, G, subs = _load(args)
    label = spec.subgroup_label(args.h, spec.h1)
    S = _gens_indices(spec, G, args.gens)
    g = schreier_quotient(G, subs[label], S)
    text = g.to_dot(name=f"{spec.name}_{label}".replace("-", "_"))
    try:
        with open(args.out, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise io.GroupFileError(f"cannot write {args.out}: {exc}") from exc
    out.say(f"wrote {g.n} vertices to {args.out}")
    return EXIT_OK


def cmd_catalog(args, out):
    entries = []
    for name in io.catalog_names():
        spec = io.load_catalog_entry(name)
        entries.append({
            "name": spec.name,
            "description": spec.description,
            "degree": spec.degree,
            "h1": spec.h1,
            "h2": spec.h2,
            "expected": spec.expected,
            "path": str(io.catalog_path(name)),
        })
    _emit({"schema_version": SCHEMA_VERSION, "catalog": entries})
    for e in entries:
        out.say(f"{e['name']:10s} {e['description']}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="sunada", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", required=True, help="group JSON file or catalog name")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="group order cap")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json-only", action="store_true", help="suppress the human summary")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check the Gassmann condition")
    p.add_argument("--h1")
    p.add_argument("--h2")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("full", parents=[common], help="certificate, intertwiner, spectra")
    p.add_argument("--h1")
    p.add_argument("--h2")
    p.add_argument("--gens", help='comma-separated cycles, e.g. "(1 2 3),(1 2)(3 4)"')
    p.add_argument("--random-sets", type=int, default=0,
                   help="also test this many seeded random generating sets")
    p.add_argument("--timings", action="store_true", help="include stage timings in the report")
    p.set_defaults(func=cmd_full)

    p = sub.add_parser("search", parents=[common], help="search for Gassmann pairs")
    p.add_argument("--order", type=int, help="only subgroups of this order")
    p.add_argument("--max-generators", type=int, default=3)
    p.add_argument("--budget", type=int, default=200_000)
    p.add_argument("--exhaustive", action="store_true", help="full subgroup lattice (|G| <= 48)")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("export-dot", parents=[common], help="write a Schreier quotient as DOT")
    p.add_argument("--h", help="subgroup label")
    p.add_argument("--gens")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("catalog", help="list bundled examples")
    p.add_argument("--json-only", action="store_true")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    out = _Reporter(json_only=args.json_only)
    try:
        return args.func(args, out)
    except (SunadaError, io.GroupFileError, CapExceeded, SearchBudgetExceeded) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
