"""Command-line entry point: ``unimod construct|solve|derived|verify``.

Exit codes: 0 success, 1 checked failure (no solution, failed check),
2 usage or parse error, 3 capacity error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .derived import (certify_derived_length, check_witness, derived_series,
                      parse_witness, witness_depth, WitnessError)
from .equations import brute_force_solve, parse_word
from .groups import ENUM_CAP, CapacityError, WreathProduct
from .parsing import ParseError, parse_element, parse_group_spec
from .suite import FAULTS, SuiteConfig, run_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3
SUBSET = " ⊇ "


def _emit(args, text: str, data: dict) -> None:
    if args.format == "machine":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _group(args):
    spec = args.group if args.group is not None else getattr(args, "spec", None)
    if spec is None:
        raise ParseError("a group spec is required (--group SPEC)", 0, "")
    return parse_group_spec(spec, args.cap)


def _enumerated(G, cap):
    if isinstance(G, WreathProduct):
        return G.enumerate(cap)
    return G


def cmd_construct(args) -> int:
    G = _group(args)
    data = {"spec": G.name, "order": G.size, "generators": list(G.gen_names)}
    if isinstance(G, WreathProduct) and G.size > args.cap:
        line = (f"order {G.base.size}^{G.top.size}*{G.top.size}, structural wreath product "
                f"(base order {G.base.size}, top order {G.top.size})")
        try:
            cert = certify_derived_length(G)
        except (ValueError, TypeError, CapacityError):
            cert = None
        if cert is not None and cert.exact is not None:
            line += f", derived length {cert.exact} (certified)"
            data["derived_length"] = cert.exact
        data["structural"] = True
        _emit(args, line, data)
        return EXIT_OK
    G = _enumerated(G, args.cap)
    s = derived_series(G)
    data["derived_series"] = s.sizes
    data["derived_length"] = s.derived_length
    if s.derived_length is not None and s.derived_length <= 1:
        line = f"order {G.size}, abelian"
    else:
        line = f"order {G.size}, derived series {SUBSET.join(map(str, s.sizes))}"
        if not s.solvable:
            line += " (not solvable)"
    lines = [line]
    if G.marked:
        marked = {k: G.label(v) for k, v in G.marked.items()}
        data["marked"] = marked
        lines.append("marked: " + ", ".join(f"{k} = {v}" for k, v in marked.items()))
    _emit(args, "\n".join(lines), data)
    return EXIT_OK


def cmd_solve(args) -> int:
    if args.word is None:
        raise ParseError("a word is required (--word WORD)", 0, "")
    G = _enumerated(_group(args), args.cap)
    w = parse_word(args.word, G)
    sols = brute_force_solve(w)
    labels = [G.label(x) for x in sols]
    data = {"word": str(w), "exponent_sum": w.exponent_sum(), "unimodular": w.is_unimodular(),
            "solutions": labels}
    text = "\n".join(f"x = {s}" for s in labels) if labels else "no solution"
    _emit(args, text, data)
    return EXIT_OK if sols else EXIT_FAIL


def cmd_derived(args) -> int:
    G = _group(args)
    if args.witness is not None:
        if args.element is None or args.k is None:
            raise ParseError("--witness needs --element and --k", 0, "")
        target = parse_element(args.element, G)
        w = parse_witness(args.witness, G)
        depth = witness_depth(w)
        ok = check_witness(G, target, w, args.k)
        data = {"depth": depth if depth != float("inf") else "inf", "k": args.k, "certified": ok}
        _emit(args, f"witness depth {depth}; certifies {args.element} in term {args.k}: "
                    f"{'yes' if ok else 'no'}", data)
        return EXIT_OK if ok else EXIT_FAIL
    G = _enumerated(G, args.cap)
    s = derived_series(G)
    data = {"derived_series": s.sizes, "derived_length": s.derived_length}
    dl = s.derived_length
    lines = [f"derived series {SUBSET.join(map(str, s.sizes))}, "
             + (f"derived length {dl}" if dl is not None else "not solvable")]
    status = EXIT_OK
    if args.element is not None:
        g = parse_element(args.element, G)
        levels = [args.k] if args.k is not None else list(range(len(s.levels)))
        member = {k: s.contains(g, k) for k in levels}
        data["membership"] = {str(k): v for k, v in member.items()}
        lines += [f"{args.element} in G^({k}): {'yes' if v else 'no'}" for k, v in member.items()]
        if args.k is not None and not member[args.k]:
            status = EXIT_FAIL
    _emit(args, "\n".join(lines), data)
    return status


def cmd_verify(args) -> int:
    config = SuiteConfig(n_max=args.n_max, seed=args.seed, fault=args.inject_fault)
    report = run_all(config)
    print(report.to_machine() if args.format == "machine" else report.to_text())
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--cap", type=_positive, default=ENUM_CAP, help="enumeration cap")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="unimod", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a group and summarize it")
    p.add_argument("spec", nargs="?")
    p.add_argument("--group")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("solve", parents=[common], help="solve a one-variable equation by search")
    p.add_argument("spec", nargs="?")
    p.add_argument("--group")
    p.add_argument("--word")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("derived", parents=[common], help="derived series, membership, witnesses")
    p.add_argument("spec", nargs="?")
    p.add_argument("--group")
    p.add_argument("--element")
    p.add_argument("--k", type=int)
    p.add_argument("--witness")
    p.set_defaults(func=cmd_derived)

    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--inject-fault", choices=sorted(FAULTS))
    p.set_defaults(func=cmd_verify)
    return parser


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc.pretty()}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ValueError, WitnessError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
