"""Command line entry point ``galois-locus``.

Exit codes: 0 when every claim holds, 1 when a mathematical claim fails
(the claim and a reproduction command are printed), 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from typing import Optional, Sequence

from .detector import certify_galois, examine_point, linear_fiber_automorphisms, registered_maps
from .errors import GaloisLocusError, NoStructure
from .expr import parse_form, parse_map, parse_point
from .families import FamilyInstance, FamilySpec, family_curve, parse_family
from .field import parse_field
from .funcfield import curve_model
from .geometry import ProjPoint, curve_make
from .kummer import branch_structure, kummer_data, ramification_ledger
from .maps import group_closure, group_structure, map_make, preserves_fibers
from .pipelines import SCHEMA, PipelineReport, pipeline_hermitian, pipeline_prop2, pipeline_scan, pipeline_theorem1


def _dump(obj: dict, path: Optional[str]) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2)
    print(text)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _command(argv: Sequence[str]) -> str:
    return "galois-locus " + " ".join(shlex.quote(a) for a in argv)


def _finish(rep: PipelineReport, args) -> int:
    _dump(rep.to_json(), args.json)
    if rep.passed:
        return 0
    for c in rep.failures:
        print(f"FAILED {c.tag}: {c.statement} ({c.detail})", file=sys.stderr)
    print(f"reproduce with: {rep.command}", file=sys.stderr)
    return 1


def _curve_and_field(args):
    if not args.field:
        raise GaloisLocusError("--field is required")
    F = parse_field(args.field)
    if getattr(args, "family", None):
        inst = family_curve(parse_family(args.family), F)
        return inst.curve, F, inst.registered
    if not args.curve:
        raise GaloisLocusError("give --curve or --family")
    return curve_make(parse_form(args.curve, F)), F, {}


def cmd_detect(args, argv) -> int:
    curve, F, reg = _curve_and_field(args)
    if not args.point:
        raise GaloisLocusError("--point is required")
    P = ProjPoint(F, parse_point(args.point, F))
    registered = list(reg.get(P.coords, [])) + list(args.register or [])
    v = examine_point(curve, P, args.samples, args.seed, registered)
    out = {"schema": SCHEMA, "command": _command(argv), "curve": curve.to_str(), "field": F.q, **v.to_json()}
    if v.kind == "Certified":
        full = certify_galois(curve, P, registered, args.samples, args.seed)
        out["generators"] = [g.to_json() for g in full.group.generators]
    _dump(out, args.json)
    return 0


def cmd_scan(args, argv) -> int:
    if args.family and args.family.startswith("hermitian"):
        inst = family_curve(parse_family(args.family))
        curve, reg = inst.curve, inst.registered
    else:
        curve, _, reg = _curve_and_field(args)
    inst = FamilyInstance(FamilySpec("custom", form=curve.to_str()), curve.field, curve, [], reg)
    rep = pipeline_scan(inst, args.samples, args.seed, args.threads, _command(argv), args.min_certified)
    return _finish(rep, args)


def cmd_group(args, argv) -> int:
    curve, F, reg = _curve_and_field(args)
    if not args.point:
        raise GaloisLocusError("--point is required")
    P = ProjPoint(F, parse_point(args.point, F))
    model = curve_model(curve, P)
    if args.map:
        gens = []
        for text in args.map:
            (nu, du), (nv, dv) = parse_map(text, F)
            gens.append(map_make(model, (nu, du), (nv, dv), label=text))
    else:
        registered = list(reg.get(P.coords, [])) + list(args.register or [])
        gens = linear_fiber_automorphisms(curve, P, model)
        gens += [m for m in registered_maps(model, registered) if preserves_fibers(m)]
    G = group_closure(gens, cap=args.cap or None, model=model)
    st = group_structure(G)
    out = {
        "schema": SCHEMA,
        "command": _command(argv),
        "curve": curve.to_str(),
        "field": F.q,
        "point": list(P.coords),
        "chart": {"f": model.f.to_str(model.names), "t": model.pencil_name},
        "structure": st.to_json(),
        "elements": [e.to_json() for e in G.elements],
        "fiber_preserving": all(preserves_fibers(e) for e in G.elements),
    }
    _dump(out, args.json)
    return 0


def cmd_genus(args, argv) -> int:
    curve, F, _ = _curve_and_field(args)
    if not args.point:
        raise GaloisLocusError("--point is required")
    P = ProjPoint(F, parse_point(args.point, F))
    kd = kummer_data(curve_model(curve, P))
    ledger = ramification_ledger(kd)
    out = {
        "schema": SCHEMA,
        "command": _command(argv),
        "curve": curve.to_str(),
        "field": F.q,
        "c": kd.c.to_str(kd.base_name),
        "factors": kd.to_json()["factors"],
        "kummer": kd.to_json(),
        "ledger": ledger.to_json(),
        "g": ledger.genus,
    }
    try:
        out["branch"] = branch_structure(kd).to_json()
    except NoStructure:
        out["branch"] = None
    _dump(out, args.json)
    return 0


def cmd_theorem1(args, argv) -> int:
    if not args.family or not args.field:
        raise GaloisLocusError("theorem1 needs --family and --field")
    rep = pipeline_theorem1(parse_family(args.family), parse_field(args.field), args.samples, args.seed, _command(argv))
    return _finish(rep, args)


def cmd_hermitian(args, argv) -> int:
    if not args.q:
        raise GaloisLocusError("hermitian needs --q")
    samples = args.samples if args.samples_given else 60
    rep = pipeline_hermitian(args.q, samples, args.seed, args.threads, _command(argv))
    return _finish(rep, args)


def cmd_prop2(args, argv) -> int:
    if not args.d or not args.field:
        raise GaloisLocusError("prop2 needs --d and --field")
    samples = args.samples if args.samples_given else 100
    rep = pipeline_prop2(args.d, parse_field(args.field), samples, args.seed, args.threads, _command(argv))
    return _finish(rep, args)


COMMANDS = {
    "detect": cmd_detect,
    "scan": cmd_scan,
    "group": cmd_group,
    "genus": cmd_genus,
    "theorem1": cmd_theorem1,
    "hermitian": cmd_hermitian,
    "prop2": cmd_prop2,
}


class _SamplesAction(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, self.dest, values)
        namespace.samples_given = True


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="galois-locus",
        description="Detect, certify and analyze outer Galois points of plane curves over finite fields.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--curve", help="ternary form in X, Y, Z, e.g. 'X^4+X^2*Z^2+Y^4'")
    parser.add_argument("--field", help="field size as p or p^k")
    parser.add_argument("--point", help="projective point a:b:c")
    parser.add_argument("--family", help="fermat:d, takahashi:d, hermitian:q, genfermat:m:d, custom:<form>")
    parser.add_argument("--samples", type=int, default=200, action=_SamplesAction)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--register", action="append", help="extra map '(u, v)' in the chart of --point")
    parser.add_argument("--map", action="append", help="map '(u, v)' for the group command")
    parser.add_argument("--cap", type=int, default=0, help="closure cap for the group command")
    parser.add_argument("--json", help="also write the report to this path")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--d", type=int)
    parser.add_argument("--q", type=int)
    parser.add_argument("--min-certified", type=int, default=None)
    parser.set_defaults(samples_given=False)
    return parser


def _join_point_values(argv: list[str]) -> list[str]:
    # "--point -1:1:0" would otherwise be read as an option
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--point" and i + 1 < len(argv):
            out.append(f"--point={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_join_point_values(argv))
    if args.samples < 1:
        parser.error("--samples must be positive")
    if args.threads < 1:
        parser.error("--threads must be positive")
    try:
        return COMMANDS[args.command](args, argv)
    except (GaloisLocusError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
