"""Command-line surface.

Exit codes: 0 for success / true verdicts, 1 for false mathematical
verdicts (an equation fails, no retraction exists, not isomorphic),
2 for usage, file, or parse errors.  `--json` switches every command to
machine output with key and element order following carrier order, so
identical inputs give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .core import FiniteAlgebra, InvalidAlgebra, Subuniverse, UalgError
from .fileformat import (
    ParseError,
    parse_algebra_file,
    parse_equation_file,
    serialize_algebra,
)
from .free_semigroup import build_truncated, search_bounded_retraction, word_str
from .generation import clone_n, generate
from .morphisms import (
    Morphism,
    check_homomorphism,
    check_isomorphism,
    enumerate_homomorphisms,
    find_retractions,
    reduct,
)
from .presets import PRESET_NAMES, preset
from .products import direct_product
from .reduced_power import (
    adjoin_generate,
    coordinate_retraction,
    parse_ep_sequence,
    preservation_suite,
)
from .terms import eval_term, parse_term, satisfies_all

USAGE_ERROR = 2
FALSE_VERDICT = 1


class CliError(Exception):
    def __init__(self, message: str, code: int = USAGE_ERROR):
        super().__init__(message)
        self.code = code


def _read_file(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"file not found: {path}" if isinstance(exc, FileNotFoundError)
                       else f"cannot read {path}: {exc}")


def _load_algebras(path: str) -> list[FiniteAlgebra]:
    try:
        return parse_algebra_file(_read_file(path))
    except ParseError as exc:
        raise CliError(f"{path}: {exc}")


def _pick(algs: list[FiniteAlgebra], name: Optional[str], path: str) -> FiniteAlgebra:
    if name is None:
        if len(algs) == 1:
            return algs[0]
        raise CliError(f"{path} holds {len(algs)} algebras; select one with --algebra")
    for a in algs:
        if a.name == name:
            return a
    raise CliError(f"no algebra named {name} in {path}")


def _load_equations(path: str, name: str):
    if path.startswith("preset:"):
        try:
            return preset(path.removeprefix("preset:"))
        except UalgError as exc:
            raise CliError(str(exc))
    try:
        return parse_equation_file(_read_file(path), name=name)
    except ParseError as exc:
        raise CliError(f"{path}: {exc}")


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(human)


def cmd_check(args) -> int:
    algs = _load_algebras(args.file)
    lines = [f"{a.name}: {len(a.carrier)} elements, "
             f"{len(a.signature.symbols)} operations" for a in algs]
    payload = {
        "algebras": [
            {
                "name": a.name,
                "elements": list(a.carrier),
                "operations": [{"symbol": s, "arity": r} for s, r in a.signature.symbols],
            }
            for a in algs
        ]
    }
    _emit(args, payload, "\n".join(lines) if lines else "no algebras")
    return 0


def cmd_eval(args) -> int:
    alg = _pick(_load_algebras(args.file), args.algebra, args.file)
    binding_named = {}
    for item in (args.bind.split(",") if args.bind else []):
        if "=" not in item:
            raise CliError(f"bad binding: {item!r} (expected var=element)")
        var, val = item.split("=", 1)
        binding_named[var.strip()] = val.strip()
    variables = list(binding_named)
    term = parse_term(args.term, variables)
    binding = {i: binding_named[v] for i, v in enumerate(variables)}
    result = eval_term(alg, term, binding)
    _emit(args, {"result": result}, result)
    return 0


def cmd_satisfies(args) -> int:
    alg = _pick(_load_algebras(args.file), args.algebra, args.file)
    eqs = _load_equations(args.equations, name=args.equations)
    report = satisfies_all(alg, eqs, workers=args.workers)
    rows = []
    payload_rows = []
    for eq, res in report.results:
        rows.append(f"{'pass' if res.holds else 'FAIL'}  {eq.render()}"
                    + (f"  counterexample {res.counterexample}" if res.counterexample else ""))
        payload_rows.append(
            {"equation": eq.render(), "holds": res.holds,
             "counterexample": res.counterexample}
        )
    verdict = "variety member" if report.variety_member else "not a member"
    _emit(
        args,
        {"algebra": alg.name, "equations": eqs.name,
         "variety_member": report.variety_member, "results": payload_rows},
        "\n".join(rows + [verdict]),
    )
    return 0 if report.variety_member else FALSE_VERDICT


def cmd_gen(args) -> int:
    alg = _pick(_load_algebras(args.file), args.algebra, args.file)
    seed = [e for e in (args.elements.split(",") if args.elements else []) if e]
    result = generate(alg, seed)
    stages = [list(s) for s in result.trace.stages]
    human = "\n".join(
        [f"stage {i}: {' '.join(s) or '(empty)'}" for i, s in enumerate(stages)]
        + [("generated: " + (" ".join(result.members) or "empty -- not an algebra"))]
    )
    _emit(args, {"algebra": alg.name, "seed": seed, "stages": stages,
                 "members": list(result.members), "empty": result.is_empty}, human)
    return 0


def cmd_clone(args) -> int:
    alg = _pick(_load_algebras(args.file), args.algebra, args.file)
    frag = clone_n(alg, args.arity, budget=args.budget)
    from .terms import term_to_str

    variables = [f"x{i+1}" for i in range(args.arity)]
    rows = [
        f"{' '.join(alg.carrier[v] for v in m.table)}  <- {term_to_str(m.witness, variables)}"
        for m in frag.members
    ]
    payload = {
        "algebra": alg.name,
        "arity": frag.arity,
        "complete": frag.complete,
        "members": [
            {"table": [alg.carrier[v] for v in m.table],
             "witness": term_to_str(m.witness, variables)}
            for m in frag.members
        ],
    }
    _emit(args, payload, "\n".join(rows + [f"{len(frag.members)} members"
                                           + ("" if frag.complete else " (partial)")]))
    return 0


def cmd_homs(args) -> int:
    algs = _load_algebras(args.file)
    names = args.algebras.split(",")
    if len(names) != 2:
        raise CliError("--algebras expects two comma-separated names")
    src = _pick(algs, names[0], args.file)
    dst = _pick(algs, names[1], args.file)
    if args.count:
        n = enumerate_homomorphisms(src, dst, mode="count", node_budget=args.budget)
        _emit(args, {"count": n}, str(n))
        return 0 if n else FALSE_VERDICT
    homs = enumerate_homomorphisms(src, dst, mode="list", node_budget=args.budget)
    payload = {"homomorphisms": [m.as_dict() for m in homs]}
    human = "\n".join(
        " ".join(f"{k}->{v}" for k, v in m.as_dict().items()) for m in homs
    ) or "none"
    _emit(args, payload, human)
    return 0 if homs else FALSE_VERDICT


def cmd_iso(args) -> int:
    algs = _load_algebras(args.file)
    names = args.algebras.split(",")
    if len(names) != 2:
        raise CliError("--algebras expects two comma-separated names")
    a = _pick(algs, names[0], args.file)
    b = _pick(algs, names[1], args.file)
    iso = check_isomorphism(a, b, node_budget=args.budget)
    if iso is None:
        _emit(args, {"isomorphic": False, "map": None}, "not isomorphic")
        return FALSE_VERDICT
    _emit(args, {"isomorphic": True, "map": iso.as_dict()},
          "isomorphic: " + " ".join(f"{k}->{v}" for k, v in iso.as_dict().items()))
    return 0


def cmd_retracts(args) -> int:
    alg = _pick(_load_algebras(args.file), args.algebra, args.file)
    members = [e for e in args.image.split(",") if e]
    try:
        image = Subuniverse.of(alg, members)
    except ValueError as exc:
        raise CliError(str(exc))
    retractions = find_retractions(alg, image)
    payload = {"retractions": [m.as_dict() for m in retractions]}
    human = "\n".join(
        " ".join(f"{k}->{v}" for k, v in m.as_dict().items()) for m in retractions
    ) or "no retraction"
    _emit(args, payload, human)
    return 0 if retractions else FALSE_VERDICT


def cmd_reduct(args) -> int:
    alg = _pick(_load_algebras(args.file), args.algebra, args.file)
    keep = [s for s in args.keep.split(",") if s]
    try:
        out = reduct(alg, keep, name=args.name)
    except KeyError as exc:
        raise CliError(str(exc))
    _emit(args, {"algebra": serialize_algebra(out)}, serialize_algebra(out).rstrip("\n"))
    return 0


def cmd_product(args) -> int:
    algs = _load_algebras(args.file)
    factors = [_pick(algs, n, args.file) for n in args.algebras.split(",")]
    elements = args.elements.split(",") if args.elements else None
    try:
        prod = direct_product(factors, prefix=args.prefix, elements=elements,
                              name=args.name)
    except UalgError as exc:
        raise CliError(str(exc))
    relabel = {e: list(t) for e, t in prod.labels}
    projections = [
        {"factor": f.name, "map": m.as_dict()}
        for f, m in zip(prod.factors, prod.projections)
    ]
    payload = {
        "algebra": serialize_algebra(prod.product),
        "relabel": relabel,
        "projections": projections,
    }
    human = serialize_algebra(prod.product).rstrip("\n") + "\n# relabel: " + json.dumps(relabel)
    _emit(args, payload, human)
    return 0


def cmd_free_retract(args) -> int:
    gens = [chr(ord("a") + i) for i in range(args.gens)]
    T = build_truncated(gens, args.bound)
    result = search_bounded_retraction(T, args.image_bound)
    transcript = [
        {"word": word_str(s.word), "left": word_str(s.left), "right": word_str(s.right),
         "forced": word_str(s.forced) if s.forced else None, "note": s.note}
        for s in result.transcript
    ]
    if result.found is not None:
        payload = {"found": {word_str(w): word_str(v) for w, v in sorted(result.found.items())},
                   "transcript": transcript}
        _emit(args, payload, "retraction found")
        return 0
    human = "\n".join(["no bounded retraction"] + [s["note"] for s in transcript])
    _emit(args, {"found": None, "transcript": transcript}, human)
    return FALSE_VERDICT


def _parse_gens(alg, gen_args):
    return [parse_ep_sequence(alg, g) for g in gen_args or []]


def cmd_rp(args) -> int:
    alg = _pick(_load_algebras(args.file), args.algebra, args.file)
    gens = _parse_gens(alg, args.gen)
    if args.rp_command == "adjoin":
        ext = adjoin_generate(alg, gens)
        rows = [f"{label}  = {seq.render()}" for label, seq in ext.labels]
        payload = {
            "base": alg.name,
            "members": [{"label": label, "sequence": seq.render()} for label, seq in ext.labels],
            "algebra": serialize_algebra(ext.algebra),
        }
        _emit(args, payload, "\n".join(rows + [f"{len(ext.members)} members"]))
        return 0
    if args.rp_command == "retract":
        ext = adjoin_generate(alg, gens)
        r = coordinate_retraction(ext, args.index)
        _emit(args, {"index": args.index, "map": r.as_dict()},
              " ".join(f"{k}->{v}" for k, v in r.as_dict().items()))
        return 0
    if args.rp_command == "preserve":
        eqs = _load_equations(args.equations, name=args.equations)
        report = preservation_suite(alg, eqs, gens)
        rows = [f"{'pass' if res.holds else 'FAIL'}  {eq.render()}"
                for eq, res in report.results]
        payload = {
            "base": alg.name,
            "equations": eqs.name,
            "all_pass": report.variety_member,
            "results": [{"equation": eq.render(), "holds": res.holds}
                        for eq, res in report.results],
        }
        _emit(args, payload, "\n".join(rows))
        return 0 if report.variety_member else FALSE_VERDICT
    raise CliError(f"unknown rp subcommand: {args.rp_command}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ualg", description="finite universal-algebra toolkit"
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--budget", type=int, default=10_000_000,
                        help="search/enumeration budget")
    parser.add_argument("--workers", type=int, default=1,
                        help="worker count hint; results are identical for any value")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized representative tests only")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse and validate an algebra file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("eval", help="evaluate a term under a binding")
    p.add_argument("file")
    p.add_argument("--algebra")
    p.add_argument("--term", required=True)
    p.add_argument("--bind", default="", help="comma-separated var=element pairs")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("satisfies", help="check an equation set")
    p.add_argument("file")
    p.add_argument("equations", help="equation file, or preset:<name> "
                   f"({', '.join(PRESET_NAMES)})")
    p.add_argument("--algebra")
    p.set_defaults(func=cmd_satisfies)

    p = sub.add_parser("gen", help="generate a subalgebra from a seed set")
    p.add_argument("file")
    p.add_argument("--algebra")
    p.add_argument("--elements", default="", help="comma-separated seed elements")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("clone", help="n-ary clone fragment")
    p.add_argument("file")
    p.add_argument("--algebra")
    p.add_argument("--arity", type=int, required=True)
    p.set_defaults(func=cmd_clone)

    p = sub.add_parser("homs", help="enumerate homomorphisms")
    p.add_argument("file")
    p.add_argument("--algebras", required=True, help="source,target")
    p.add_argument("--count", action="store_true")
    p.set_defaults(func=cmd_homs)

    p = sub.add_parser("iso", help="isomorphism test")
    p.add_argument("file")
    p.add_argument("--algebras", required=True, help="first,second")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("retracts", help="retractions onto a subuniverse")
    p.add_argument("file")
    p.add_argument("--algebra")
    p.add_argument("--image", required=True, help="comma-separated image elements")
    p.set_defaults(func=cmd_retracts)

    p = sub.add_parser("reduct", help="forget operations")
    p.add_argument("file")
    p.add_argument("--algebra")
    p.add_argument("--keep", required=True, help="comma-separated symbols to keep")
    p.add_argument("--name")
    p.set_defaults(func=cmd_reduct)

    p = sub.add_parser("product", help="categorical direct product")
    p.add_argument("file")
    p.add_argument("--algebras", required=True, help="comma-separated factor names")
    p.add_argument("--prefix", default="p")
    p.add_argument("--elements", help="explicit fresh urelement list")
    p.add_argument("--name")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("free-retract",
                       help="bounded retraction search on a truncated free semigroup")
    p.add_argument("--gens", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--image-bound", type=int, required=True, dest="image_bound")
    p.set_defaults(func=cmd_free_retract)

    p = sub.add_parser("rp", help="reduced-power extension commands")
    rp_sub = p.add_subparsers(dest="rp_command", required=True)
    for sub_name in ("adjoin", "retract", "preserve"):
        q = rp_sub.add_parser(sub_name)
        q.add_argument("file")
        q.add_argument("--algebra")
        q.add_argument("--gen", action="append",
                       help="generator, e.g. 'pre b1 | per b2 b1' (repeatable)")
        if sub_name == "retract":
            q.add_argument("--index", type=int, default=0)
        if sub_name == "preserve":
            q.add_argument("equations")
        q.set_defaults(func=cmd_rp)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except (UalgError, InvalidAlgebra) as exc:
        print(str(exc), file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
