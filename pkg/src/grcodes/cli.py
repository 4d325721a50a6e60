"""Command-line front end: ``grcodes <command> --p P --a A --s S [--gen POLY ...]``."""

from __future__ import annotations

import argparse
import json
import sys

from .ambient import (
    EnumerationLimitError,
    Kind,
    canonical_form,
    make_ambient,
    max_enumeration,
    nilpotency_by_powering,
    nilpotency_index,
)
from .distance import code_distance
from .galois_ring import make_ring
from .ideals import Ideal, groebner_form, reduce_generators
from .oracle import (
    Check,
    brute_distance,
    build_lattice,
    expansion_lemma_applies,
    lattice_bound,
    verify_binomial_lemma,
    verify_expansion_lemma,
    verify_structure,
)

COMMANDS = ("distance", "reduce", "canonical", "lattice", "verify", "oracle")


class ValidationError(ValueError):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, required=True, help="characteristic prime")
    common.add_argument("--a", type=int, required=True, help="exponent: coefficients live in GR(p^a, m)")
    common.add_argument("--m", type=int, default=1, help="Galois extension degree (default 1)")
    common.add_argument("--s", type=int, required=True, help="code length is p^s")
    common.add_argument("--kind", choices=[k.value for k in Kind], default=Kind.NEGACYCLIC.value)
    common.add_argument("--modulus", help="basic irreducible modulus, e.g. 'x^2+x+1'")
    common.add_argument("--gen", action="append", default=[], help="ideal generator (repeatable)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-enumeration", type=int, default=None,
                        help="enumeration bound (default: $GR_CODES_MAX_ENUM or 2^20)")

    parser = argparse.ArgumentParser(prog="grcodes", description="Repeated-root (nega)cyclic codes over Galois rings")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "distance": "minimum distance by the Groebner / canonical form reduction",
        "reduce": "reduce generators to at most a and print the Groebner form",
        "canonical": "canonical form of one polynomial",
        "lattice": "full ideal lattice of a tiny ambient",
        "verify": "structure, binomial and expansion checks",
        "oracle": "brute-force distance and agreement with the reduction",
    }
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "verify":
            sp.add_argument("--n-max", type=int, default=4, help="largest n for the binomial check")
    rp = sub.add_parser("replay", help="re-run a job from its JSON output")
    rp.add_argument("file", help="JSON file written by --format json ('-' for stdin)")
    rp.add_argument("--format", choices=("text", "json"), default="json")
    return parser


def _job_argv(doc: dict, fmt: str) -> list[str]:
    params = doc["params"]
    argv = [doc["command"]]
    for key in ("p", "a", "m", "s", "kind", "modulus"):
        argv += [f"--{key}", str(params[key])]
    for g in params.get("generators", []):
        argv += ["--gen", g]
    for key, flag in (("max_enumeration", "--max-enumeration"), ("n_max", "--n-max")):
        if params.get(key) is not None:
            argv += [flag, str(params[key])]
    return argv + ["--format", fmt]


def _setup(args):
    ring = make_ring(args.p, args.a, args.m, args.modulus)
    if args.s < 1:
        raise ValidationError(f"s must be at least 1, got {args.s}")
    amb = make_ambient(ring, args.s, Kind(args.kind))
    gens = [amb.parse(g) for g in args.gen]
    return amb, gens


def _need_gens(args, gens, exactly=None):
    if exactly is not None and len(gens) != exactly:
        raise ValidationError(f"{args.command} needs exactly {exactly} --gen, got {len(gens)}")
    if not gens:
        raise ValidationError(f"{args.command} needs at least one --gen")


def _run(args) -> tuple[dict, dict, list[Check]]:
    amb, gens = _setup(args)
    bound = args.max_enumeration if args.max_enumeration is not None else max_enumeration()
    params = {
        "p": amb.p, "a": amb.a, "m": amb.m, "s": amb.s, "kind": amb.kind.value,
        "modulus": amb.ring.modulus_str("x"), "n": amb.n,
        "generators": [str(g) for g in gens],
        "max_enumeration": args.max_enumeration,
    }
    checks: list[Check] = []
    cmd = args.command

    if cmd == "distance":
        _need_gens(args, gens)
        result = code_distance(Ideal(amb, gens)).as_dict()

    elif cmd == "reduce":
        _need_gens(args, gens)
        I = Ideal(amb, gens)
        R = reduce_generators(I)
        result = {"generators": [str(g) for g in R.generators], "groebner": None}
        checks.append(Check("reduced_generates_same_ideal", R == I, f"{len(R.generators)} generators"))
        checks.append(Check("at_most_a_generators", len(R.generators) <= amb.a, f"a = {amb.a}"))
        if not I.is_zero():
            G = groebner_form(I)
            result["groebner"] = [{"j": j, "f": str(f)} for j, f in G.pairs]
            checks += [Check(n, ok, d) for n, ok, d in G.check_properties()]
            checks.append(Check("groebner_generates_same_ideal", G.ideal() == I, ""))

    elif cmd == "canonical":
        _need_gens(args, gens, exactly=1)
        cf = canonical_form(gens[0])
        result = {"polynomial": str(gens[0]), "terms": cf.describe()}
        checks.append(Check("reassembles", cf.reassemble() == gens[0], ""))

    elif cmd == "lattice":
        lat = build_lattice(amb, args.max_enumeration if args.max_enumeration is not None else lattice_bound())
        result = lat.as_dict()

    elif cmd == "verify":
        params["n_max"] = args.n_max
        result = {}
        lb = args.max_enumeration if args.max_enumeration is not None else lattice_bound()
        if amb.size <= lb:
            rep = verify_structure(amb, bound=lb)
            checks += rep.checks
            result["nilpotency"] = rep.nilpotency
            result["ideal_count"] = len(rep.lattice)
        else:
            direct, closed = nilpotency_by_powering(amb.radical_generator), nilpotency_index(amb)
            checks.append(Check("nilpotency_index", direct == closed, f"powering {direct}, closed form {closed}"))
            result["nilpotency"] = direct
            result["structure"] = f"skipped: {amb.size} elements above the lattice bound {lb}"
        checks += verify_binomial_lemma(amb.p, args.n_max)
        checks += verify_expansion_lemma(amb)
        result["expansion_lemma_applies"] = expansion_lemma_applies(amb)

    elif cmd == "oracle":
        _need_gens(args, gens)
        I = Ideal(amb, gens)
        brute = brute_distance(I, bound)
        fast = code_distance(I).distance
        result = {"brute_distance": brute, "code_distance": fast, "agree": brute == fast}
        checks.append(Check("agreement", brute == fast, f"brute {brute}, reduction {fast}"))
    else:  # pragma: no cover
        raise ValidationError(f"unknown command {cmd}")
    return params, result, checks


def _text(command: str, params: dict, result: dict, checks: list[Check]) -> str:
    lines = [
        f"{command}: GR({params['p']}^{params['a']},{params['m']})[x]/(x^{params['n']}"
        f"{'+' if params['kind'] == 'negacyclic' else '-'}1), modulus {params['modulus']}"
    ]
    if params["generators"]:
        lines.append("input: " + ", ".join(params["generators"]))
    if command == "lattice":
        lines.append(f"ideals: {result['count']} ({'chain' if result['chain'] else 'not a chain'})")
        names = {v: k for k, v in result["distinguished"].items()}
        for entry in result["ideals"]:
            tag = f"  [{names[entry['index']]}]" if entry["index"] in names else ""
            lines.append(f"  {entry['index']}: <{', '.join(entry['generators'])}>  |I| = {entry['cardinality']}{tag}")
        lines.append("covers: " + " ".join(f"{lo}<{hi}" for lo, hi in result["edges"]))
    else:
        for key, value in result.items():
            if isinstance(value, list):
                lines.append(f"{key}:")
                lines += [f"  {v}" for v in value]
            else:
                lines.append(f"{key}: {value}")
    for c in checks:
        lines.append(f"[{'PASS' if c.ok else 'FAIL'}] {c.name}" + (f": {c.detail}" if c.detail else ""))
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    if args.command == "replay":
        try:
            doc = json.load(sys.stdin if args.file == "-" else open(args.file))
            argv = _job_argv(doc, args.format)
        except (OSError, ValueError, KeyError) as exc:
            print(f"error: cannot replay {args.file}: {exc}", file=sys.stderr)
            return 2
        return main(argv)
    try:
        params, result, checks = _run(args)
    except (ValueError, EnumerationLimitError) as exc:
        # ValidationError, RingError and PolynomialSyntaxError are all ValueErrors
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"internal assertion failed: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        doc = {"params": params, "command": args.command, "result": result, "checks": [c.as_dict() for c in checks]}
        print(json.dumps(doc, indent=2))
    else:
        print(_text(args.command, params, result, checks))
    return 0 if all(c.ok for c in checks) else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
