"""Command line: ``sector-atlas group|graph|fusion|verify``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import acceptance
from .families import ConstructionError, SpecError, build_from_spec
from .fusion import FixtureError, FusionError, check_equation, hecke_ring, load_fixture, rep_ring
from .graphkit import dual_principal_graph, emit, gbmn, graphs_isomorphic, load_figure, principal_graph, tilde
from .perm import (GroupError, GuardExceeded, RegularGroupError, frobenius_analysis, is_elementary_abelian,
                   primitivity_blocks, stabilizer_chain, transitivity_profile)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _group(spec: str):
    try:
        return build_from_spec(spec)
    except (SpecError, ConstructionError, ValueError) as exc:
        raise UsageError(str(exc)) from None


# --------------------------------------------------------------------------
# group

def group_report(G) -> dict:
    prof = transitivity_profile(G)
    rep: dict = {"name": G.name, "degree": G.degree, "order": G.order, "transitivity": prof.describe(),
                 "base": list(G.base)}
    rep["stabilizer_chain"] = [H.order for H in stabilizer_chain(G, G.base)]
    if prof.k == 0:
        rep["primitive"] = None
        rep["frobenius"] = None
        return rep
    blocks = primitivity_blocks(G)
    rep["primitive"] = blocks is None
    if blocks is not None:
        rep["blocks"] = blocks
    try:
        fr = frobenius_analysis(G)
    except RegularGroupError:
        rep["frobenius"] = "regular"
        return rep
    if fr is None:
        rep["frobenius"] = None
    else:
        rep["frobenius"] = {"kernel": fr.kernel.order, "complement": fr.complement.order,
                            "kernel_elementary_abelian": is_elementary_abelian(fr.kernel)}
    return rep


def _group_text(rep: dict) -> str:
    lines = [f"group {rep['name']}", f"degree {rep['degree']}", f"order {rep['order']}",
             f"transitivity: {rep['transitivity']}"]
    if rep["primitive"] is None:
        lines.append("primitive: n/a")
    else:
        lines.append(f"primitive: {'yes' if rep['primitive'] else 'no'}")
        if "blocks" in rep:
            lines.append("blocks: " + " ".join("{" + ",".join(map(str, b)) + "}" for b in rep["blocks"]))
    fr = rep["frobenius"]
    if fr is None:
        lines.append("Frobenius: no")
    elif fr == "regular":
        lines.append("Frobenius: no (regular action)")
    else:
        ea = ", kernel elementary abelian" if fr["kernel_elementary_abelian"] else ""
        lines.append(f"Frobenius: kernel {fr['kernel']}, complement {fr['complement']}{ea}")
    lines.append("base: " + " ".join(map(str, rep["base"])))
    lines.append("stabilizer chain orders: " + " > ".join(map(str, rep["stabilizer_chain"])))
    return "\n".join(lines) + "\n"


def cmd_group(args) -> int:
    rep = group_report(_group(args.spec))
    _write(json.dumps(rep, indent=2) + "\n" if args.format == "json" else _group_text(rep), args.out)
    return EXIT_OK


# --------------------------------------------------------------------------
# graph

def _parse_ms(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--m expects comma-separated integers, got {text!r}") from None


def _point_pair(G, point: int, subpoint: int):
    if not (0 <= point < G.degree and 0 <= subpoint < G.degree) or point == subpoint:
        raise UsageError("--point and --subpoint must be distinct points of the action")
    H = G.stabilizer(point)
    return H, H.stabilizer(subpoint)


def build_graph(args):
    if args.kind == "family" or (args.kind == "tilde" and args.m):
        if not args.m or args.n is None:
            raise UsageError("family graphs need --m and --n")
        try:
            g = gbmn(_parse_ms(args.m), args.n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return tilde(g) if args.kind == "tilde" else g
    if not args.spec:
        raise UsageError(f"graph {args.kind} needs a group spec")
    G = _group(args.spec)
    if args.kind == "principal":
        if not G.is_transitive():
            raise UsageError("principal graphs need a transitive group")
        return principal_graph(G, args.point)
    H, K = _point_pair(G, args.point, args.subpoint)
    d = dual_principal_graph(H, K)
    return tilde(d) if args.kind == "tilde" else d


def cmd_graph(args) -> int:
    g = build_graph(args)
    fmt = args.format or "text"
    _write(emit(g, fmt), args.out)
    if args.compare:
        ref = args.compare.removeprefix("fixture:")
        try:
            fig = load_figure(ref)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
        iso = graphs_isomorphic(g, fig)
        print(f"compare {ref}: {'isomorphic' if iso is not None else 'NOT isomorphic'}", file=sys.stderr)
        return EXIT_OK if iso is not None else EXIT_FAIL
    return EXIT_OK


# --------------------------------------------------------------------------
# fusion

def _ring_text(R) -> str:
    lines = [f"ring {R.name}", f"rank {len(R)}", f"global dimension {R.global_dimension()}"]
    for i, b in enumerate(R.basis):
        lines.append(f"{b}: dim {R.dims[i]}, dual {R.basis[R.dual[i]]}")
    return "\n".join(lines) + "\n"


def cmd_fusion(args) -> int:
    G = _group(args.spec)
    R = rep_ring(G) if args.rep else hecke_ring(G)
    if not args.check:
        _write(R.dumps() + "\n" if args.format != "text" else _ring_text(R), args.out)
        return EXIT_OK
    try:
        fx = load_fixture(args.check)
    except (FixtureError, KeyError, FileNotFoundError) as exc:
        raise UsageError(str(exc)) from None
    declared = fx.expect_fail
    fx.expect_fail = declared or args.expect_fail
    report = check_equation(R, fx)
    if args.format == "json":
        _write(json.dumps(report.to_json(), indent=2) + "\n", args.out)
    else:
        _write("\n".join(report.lines()) + "\n", args.out)
    if declared and not args.expect_fail:
        print(f"{fx.series} is a refuted series; rerun with --expect-fail", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK if report.ok else EXIT_FAIL


# --------------------------------------------------------------------------
# verify

def cmd_verify(args) -> int:
    if not (args.all or args.filter):
        raise UsageError("verify needs --all or --filter NAME")
    try:
        results = acceptance.run_suite(None if args.all else args.filter, jobs=args.jobs)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    if args.format == "json":
        text = acceptance.summary_json(results, timings=not args.no_timings) + "\n"
    else:
        text = "\n".join(r.line() for r in results)
        text += f"\n{sum(r.passed for r in results)}/{len(results)} criteria pass\n"
    _write(text, args.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sector-atlas", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", help="describe a permutation group")
    g.add_argument("spec")
    g.add_argument("--format", choices=["text", "json"], default="text")
    g.add_argument("--out")
    g.set_defaults(func=cmd_group)

    gr = sub.add_parser("graph", help="emit a principal, dual, family or tilde graph")
    gr.add_argument("kind", choices=["principal", "dual", "family", "tilde"])
    gr.add_argument("spec", nargs="?")
    gr.add_argument("--format", choices=["dot", "json", "text"], default="text")
    gr.add_argument("--out")
    gr.add_argument("--compare", metavar="fixture:ID")
    gr.add_argument("--m", help="comma-separated multiplicities, starting with 1")
    gr.add_argument("--n", type=int)
    gr.add_argument("--point", type=int, default=0)
    gr.add_argument("--subpoint", type=int, default=1)
    gr.set_defaults(func=cmd_graph)

    f = sub.add_parser("fusion", help="build a fusion ring and optionally check a fixture series")
    f.add_argument("spec")
    kind = f.add_mutually_exclusive_group()
    kind.add_argument("--hecke", action="store_true", help="equivariant-bundle ring (default)")
    kind.add_argument("--rep", action="store_true", help="representation ring")
    f.add_argument("--check", metavar="SET")
    f.add_argument("--expect-fail", action="store_true")
    f.add_argument("--format", choices=["text", "json"], default=None)
    f.add_argument("--out")
    f.set_defaults(func=cmd_fusion)

    v = sub.add_parser("verify", help="run the acceptance suite")
    sel = v.add_mutually_exclusive_group()
    sel.add_argument("--all", action="store_true")
    sel.add_argument("--filter", metavar="NAME")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--format", choices=["text", "json"], default="json")
    v.add_argument("--no-timings", action="store_true", help="omit timings for byte-stable output")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GuardExceeded as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (GroupError, FusionError, FixtureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
