"""Command line interface.

    decnum <subcommand> --type <A..G> --rank <n> [options]

Subcommands: lattice, simple, subregular, minimal, stalks, tables.
Formats: text (default), json, markdown.  JSON output is a single
object {"schema": 1, "command": ..., "inputs": ..., "results": ...}
that parses back to the emitted record byte for byte.

Exit codes: 0 success, 1 computation refusal (a request the stored
data cannot answer, e.g. a truncation outside a known window), 2 usage
errors (bad flags, non-prime --ell, inadmissible type/rank).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import tables
from .omodule import DegreeWindowError, FGraded, GradedOModule, degree_window
from .perverse import (
    ConeError,
    ExtensionFlavor,
    decomposition_number,
    equivariant_decomposition,
    extension_stalk,
    f_extension_stalk,
    link_cohomology_minimal,
    link_cohomology_simple,
    localize_stalk,
    subregular_cone,
)
from .rootsys import (
    DynkinDiagram,
    folding,
    fundamental_group,
    long_root_subsystem,
)

_KINDS = {"shriek": "!", "ic": "!*", "star": "*"}
_PERVERSITIES = {"p": "p", "pplus": "p+"}


def _prime(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value < 2 or any(value % k == 0 for k in range(2, int(value**0.5) + 1)):
        raise argparse.ArgumentTypeError(f"{value} is not prime")
    return value


def _add_type_rank(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--type", required=True, choices=list("ABCDEFG"),
                     help="Dynkin series letter")
    sub.add_argument("--rank", required=True, type=int, help="number of nodes")


def _add_format(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", default="text",
                     choices=["text", "json", "markdown"])


def _parse_args(argv):
    parser = argparse.ArgumentParser(
        prog="decnum",
        description="decomposition numbers from integral link data",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("lattice", help="fundamental group of a root lattice")
    _add_type_rank(p)
    p.add_argument("--dual", action="store_true",
                   help="coweights mod coroots instead of weights mod roots")
    _add_format(p)

    p = commands.add_parser("simple", help="decomposition numbers, simple singularity")
    _add_type_rank(p)
    p.add_argument("--ell", type=_prime, help="residue characteristic")
    _add_format(p)

    p = commands.add_parser("subregular",
                            help="equivariant decomposition numbers, folded surface cone")
    _add_type_rank(p)
    p.add_argument("--ell", type=_prime)
    _add_format(p)

    p = commands.add_parser("minimal",
                            help="decomposition numbers, minimal nilpotent cone")
    _add_type_rank(p)
    p.add_argument("--ell", type=_prime)
    _add_format(p)

    p = commands.add_parser("stalks", help="extension stalk tables at the cone point")
    _add_type_rank(p)
    p.add_argument("--flavor", default="p", choices=sorted(_PERVERSITIES))
    p.add_argument("--kind", default="ic", choices=sorted(_KINDS))
    p.add_argument("--coeff", default="O", choices=["K", "O", "F"])
    p.add_argument("--ell", type=_prime, help="required when --coeff F")
    _add_format(p)

    p = commands.add_parser("tables", help="the three decomposition tables")
    p.add_argument("--paper", action="store_true",
                   help="emit the full table set (also the default)")
    _add_format(p)

    return parser, parser.parse_args(argv)


def _diagram(parser, args) -> DynkinDiagram:
    try:
        return DynkinDiagram(args.type, args.rank)
    except ValueError as e:
        parser.error(str(e))


def _module_cells(m) -> dict:
    return {"rank": m.rank, "torsion": list(m.torsion)}


def _stalk_json(g: GradedOModule) -> list[dict]:
    return [{"degree": deg, **_module_cells(m)} for deg, m in g.items()]


def _fgraded_json(f: FGraded) -> list[dict]:
    return [{"degree": deg, "dim": dim} for deg, dim in f.dims().items()]


def _integral_module_text(m) -> str:
    parts = []
    if m.rank == 1:
        parts.append("O")
    elif m.rank > 1:
        parts.append(f"O^{m.rank}")
    parts.extend(f"Z/{t}" for t in m.torsion)
    return " + ".join(parts) if parts else "0"


def _run_lattice(parser, args) -> tuple[dict, list[str]]:
    d = _diagram(parser, args)
    group, projection = fundamental_group(d, dual=args.dual)
    results = {
        "diagram": str(d),
        "dual": bool(args.dual),
        "group": str(group),
        "divisors": list(group.divisors),
        "free_rank": group.free_rank,
        "order": None if group.free_rank else group.order(),
        "projection": [list(row) for row in projection],
    }
    which = "coweights mod coroots" if args.dual else "weights mod roots"
    text = [
        f"{d}: {which} = {group}",
        f"invariant factors: {list(group.divisors)}",
    ]
    return results, text


def _ells(args) -> list[int]:
    return [args.ell] if args.ell else list(tables.GRID_PRIMES)


def _run_simple(parser, args) -> tuple[dict, list[str]]:
    d = _diagram(parser, args)
    if not d.simply_laced:
        parser.error(
            f"simple requires a simply-laced type, not {d}; "
            "use 'decnum subregular' for folded types"
        )
    cone = link_cohomology_simple(d)
    group = fundamental_group(d)[0]
    numbers = {str(ell): decomposition_number(cone, ell) for ell in _ells(args)}
    results = {
        "singularity": cone.label,
        "fundamental_group": str(group),
        "link": [
            {"degree": deg, "rank": e.rank, "torsion": list(e.torsion)}
            for deg, e in sorted(cone.link_cohomology.items())
        ],
        "decomposition_numbers": numbers,
    }
    text = [f"{cone.label}: fundamental group {group}"]
    text += [f"  ell={ell}: {n}" for ell, n in numbers.items()]
    return results, text


def _run_subregular(parser, args) -> tuple[dict, list[str]]:
    d = _diagram(parser, args)
    f = folding(d)
    cone = subregular_cone(d)
    reports = []
    for ell in _ells(args):
        rep = equivariant_decomposition(cone, f.symmetry, ell)
        reports.append(
            {"ell": ell, "plain": rep.plain, "characters": dict(rep.per_character)}
        )
    results = {
        "singularity": cone.label,
        "unfolding": str(f.gamma_hat),
        "symmetry": f.symmetry,
        "fundamental_group": str(cone.equivariant_degrees[2].group),
        "quotient_groups": list(f.quotient_groups),
        "reports": reports,
    }
    text = [
        f"{cone.label}: unfolds to {f.gamma_hat} with symmetry {f.symmetry}",
        f"fundamental group {results['fundamental_group']}",
    ]
    for rep in reports:
        chars = ", ".join(f"{k} -> {v}" for k, v in sorted(rep["characters"].items()))
        text.append(f"  ell={rep['ell']}: total {rep['plain']}  ({chars})")
    return results, text


def _run_minimal(parser, args) -> tuple[dict, list[str]]:
    d = _diagram(parser, args)
    cone = link_cohomology_minimal(d)
    sub = long_root_subsystem(d)
    group = fundamental_group(sub, dual=True)[0]
    numbers = {str(ell): decomposition_number(cone, ell) for ell in _ells(args)}
    results = {
        "singularity": cone.label,
        "long_subsystem": str(sub),
        "dual_fundamental_group": str(group),
        "open_dim": cone.open_dim,
        "decomposition_numbers": numbers,
    }
    text = [
        f"{cone.label}: long subsystem {sub}, dual fundamental group {group}, "
        f"open dimension {cone.open_dim}"
    ]
    text += [f"  ell={ell}: {n}" for ell, n in numbers.items()]
    return results, text


def _run_stalks(parser, args) -> tuple[dict, list[str]]:
    d = _diagram(parser, args)
    if args.coeff == "F" and args.ell is None:
        parser.error("--coeff F requires --ell")
    if args.coeff == "F" and args.flavor != "p":
        parser.error("field coefficients define stalks for --flavor p only")
    flavor = ExtensionFlavor(_PERVERSITIES[args.flavor], _KINDS[args.kind])
    cone = subregular_cone(d) if not d.simply_laced else link_cohomology_simple(d)
    results: dict = {
        "singularity": cone.label,
        "flavor": flavor.label(),
        "coefficients": args.coeff if args.coeff != "F" else f"F_{args.ell}",
    }
    text = [f"{cone.label}, flavor {flavor.label()}, coefficients "
            + results["coefficients"]]
    if args.coeff == "F":
        table = f_extension_stalk(cone, flavor, args.ell)
        results["stalk"] = _fgraded_json(table)
        text += [f"  H^{deg} = F_{args.ell}^{dim}" for deg, dim in table.dims().items()]
        if not table.dims():
            text.append("  0")
    else:
        stalk = extension_stalk(cone, flavor)
        if args.coeff == "K":
            results["stalk"] = [
                {"degree": deg, "dim": m.rank} for deg, m in stalk.items() if m.rank
            ]
            shown = False
            for deg, m in stalk.items():
                if m.rank:
                    text.append(f"  H^{deg} = K" + (f"^{m.rank}" if m.rank > 1 else ""))
                    shown = True
            if not shown:
                text.append("  0")
        else:
            results["stalk"] = _stalk_json(stalk)
            text += [f"  H^{deg} = {_integral_module_text(m)}" for deg, m in stalk.items()]
            if stalk.is_zero():
                text.append("  0")
    return results, text


def _run_tables(parser, args) -> tuple[dict, list[str]]:
    data = tables.paper_tables()
    return data, tables.render_text(data).splitlines()


def _inputs_dict(args) -> dict:
    skip = {"command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv=None) -> int:
    parser, args = _parse_args(argv)
    try:
        degree_window()
    except ValueError as e:
        print(f"decnum: error: {e}", file=sys.stderr)
        return 2
    handler = {
        "lattice": _run_lattice,
        "simple": _run_simple,
        "subregular": _run_subregular,
        "minimal": _run_minimal,
        "stalks": _run_stalks,
        "tables": _run_tables,
    }[args.command]
    try:
        results, text = handler(parser, args)
    except (ConeError, DegreeWindowError) as e:
        print(f"decnum: refused: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"decnum: error: {e}", file=sys.stderr)
        return 2
    if args.format == "json":
        record = {
            "schema": 1,
            "command": args.command,
            "inputs": _inputs_dict(args),
            "results": results,
        }
        print(json.dumps(record, indent=2, sort_keys=True, ensure_ascii=False))
    elif args.format == "markdown" and args.command == "tables":
        print(tables.render_markdown(results))
    elif args.format == "markdown":
        lines = [f"### decnum {args.command}", ""]
        lines += [f"    {line}" for line in text]
        print("\n".join(lines))
    else:
        print("\n".join(text))
    return 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
