"""Command-line front end: every pipeline stage, scriptable and reproducible.

Exit codes: 0 for a clean report or a true verdict, 1 for a false verdict,
counterexample, or rejection, 2 for input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .atl import OracleSizeError, eval_atl, eval_atl_oracle
from .bridge import (
    ProofError,
    axiom_sweep,
    check_proof,
    correspondence_check,
    load_proof,
    soundness_spotcheck,
)
from .cgs import Cgs, CgsError, load_cgs, random_cgs
from .schemas import SchemaError
from .stit import (
    LassoError,
    LassoHistory,
    SxIndex,
    UnsupportedFragmentError,
    eval_sx,
    validate_lasso,
)
from .syntax import FormulaSyntaxError, parse_atl, parse_sx, print_formula, translate
from .unravel import UnravelSizeError, export_fragment, unravel, verify_frame

_INPUT_ERRORS = (
    FormulaSyntaxError,
    CgsError,
    LassoError,
    UnsupportedFragmentError,
    ProofError,
    SchemaError,
    OracleSizeError,
    UnravelSizeError,
    OSError,
    ValueError,
)


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps({"schema": 1, **payload}, sort_keys=True))
    else:
        print(text)


def _load_model(args, path: str) -> Cgs:
    with open(path, "r", encoding="utf-8") as handle:
        g = load_cgs(handle.read())
    if len(g.states) > args.max_states:
        raise CgsError(
            f"model has {len(g.states)} states, over the --max-states guard "
            f"({args.max_states})"
        )
    return g


def _denotation_text(g: Cgs, denotation) -> str:
    return "{" + ", ".join(w for w in g.states if w in denotation) + "}"


def _parse_lasso_literal(text: str) -> LassoHistory:
    head, sep, rest = text.partition(";")
    if not sep:
        raise LassoError("lasso literal must look like 'w0 ; s1 | s1'")
    stem_txt, sep2, loop_txt = rest.partition("|")
    if not sep2:
        raise LassoError("lasso literal needs a '|' between stem and loop")
    stem = tuple(tuple(p.split(",")) for p in stem_txt.split())
    loop = tuple(tuple(p.split(",")) for p in loop_txt.split())
    return LassoHistory(head.strip(), stem, loop)


def _cmd_check(args, evaluate) -> int:
    g = _load_model(args, args.model)
    phi = parse_atl(args.formula)
    denotation = evaluate(g, phi)
    if args.state is not None:
        if args.state not in g.states:
            raise CgsError(f"unknown state {args.state!r}")
        verdict = args.state in denotation
        _emit(args, {"state": args.state, "verdict": verdict}, str(verdict).lower())
        return 0 if verdict else 1
    _emit(
        args,
        {"denotation": [w for w in g.states if w in denotation]},
        _denotation_text(g, denotation),
    )
    return 0


def _cmd_translate(args) -> int:
    image = translate(parse_atl(args.formula))
    _emit(args, {"translation": print_formula(image)}, print_formula(image))
    return 0


def _cmd_unravel(args) -> int:
    g = _load_model(args, args.model)
    fragment = unravel(g, args.state, args.depth)
    dump = export_fragment(fragment)
    _emit(args, {"fragment": dump.splitlines()}, dump.rstrip("\n"))
    return 0


def _cmd_verify_frame(args) -> int:
    g = _load_model(args, args.model)
    fragment = unravel(g, args.state, args.depth)
    violations = verify_frame(fragment)
    text = (
        f"ok ({len(fragment.moments)} moments checked)"
        if not violations
        else "\n".join(violations)
    )
    _emit(args, {"violations": violations}, text)
    return 0 if not violations else 1


def _cmd_eval_sx(args) -> int:
    g = _load_model(args, args.model)
    phi = parse_sx(args.formula)
    lasso = _parse_lasso_literal(args.index)
    validate_lasso(g, lasso)
    verdict = eval_sx(g, phi, SxIndex((lasso.anchor,), lasso))
    _emit(args, {"verdict": verdict}, str(verdict).lower())
    return 0 if verdict else 1


def _cmd_correspond(args) -> int:
    g = _load_model(args, args.model)
    phi = parse_atl(args.formula)
    if args.state not in g.states:
        raise CgsError(f"unknown state {args.state!r}")
    report = correspondence_check(g, phi, args.state, args.samples, args.seed)
    word = "agreement" if report.agreement else "disagreement"
    text = (
        f"{word} (atl={str(report.atl_verdict).lower()}, "
        f"histories={len(report.sx_verdicts)})"
    )
    _emit(args, report.to_json_dict(), text)
    return 0 if report.agreement else 1


def _cmd_axioms(args) -> int:
    models = [_load_model(args, path) for path in args.models]
    for i in range(args.gen):
        models.append(
            random_cgs(
                args.gen_states,
                args.gen_agents,
                args.gen_actions,
                args.gen_atoms,
                args.seed + i,
            )
        )
    if not models:
        raise CgsError("no models: pass model files or --gen N")
    report = axiom_sweep(models)
    text = f"checked {report.checked} instantiations over {len(models)} models: " + (
        "no counterexample"
        if report.clean
        else f"{len(report.counterexamples)} counterexamples"
    )
    if not report.clean:
        rows = "\n".join(json.dumps(c, sort_keys=True) for c in report.counterexamples)
        text = f"{text}\n{rows}"
    _emit(args, report.to_json_dict(), text)
    return 0 if report.clean else 1


def _cmd_prove(args) -> int:
    with open(args.script, "r", encoding="utf-8") as handle:
        lines = load_proof(handle.read())
    verdict = check_proof(lines)
    if not verdict.accepted:
        _emit(
            args,
            verdict.to_json_dict(),
            f"rejected at line {verdict.line}: {verdict.reason}",
        )
        return 1
    if args.spotcheck:
        models = [_load_model(args, path) for path in args.spotcheck]
        report = soundness_spotcheck(lines, models, args.samples, args.seed)
        payload = verdict.to_json_dict() | report.to_json_dict()
        if not report.clean:
            _emit(
                args,
                payload,
                f"accepted ({len(lines)} lines); {len(report.violations)} "
                "spot-check violations",
            )
            return 1
        _emit(
            args,
            payload,
            f"accepted ({len(lines)} lines); spot-check clean over "
            f"{len(models)} models",
        )
        return 0
    _emit(args, verdict.to_json_dict(), f"accepted ({len(lines)} lines)")
    return 0


def _cmd_random_model(args) -> int:
    g = random_cgs(args.states, args.agents, args.max_actions, args.atoms, args.seed)
    print(g.to_json())
    return 0


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-states", type=int, default=64)

    parser = argparse.ArgumentParser(
        prog="atlstit",
        description="ATL model checking, stit unraveling, and the embedding harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="fixpoint model checking")
    p.add_argument("model")
    p.add_argument("formula")
    p.add_argument("--state")
    p.set_defaults(run=lambda a: _cmd_check(a, eval_atl))

    p = sub.add_parser("oracle", parents=[common], help="strategy-enumeration oracle")
    p.add_argument("model")
    p.add_argument("formula")
    p.add_argument("--state")
    p.set_defaults(run=lambda a: _cmd_check(a, eval_atl_oracle))

    p = sub.add_parser("translate", parents=[common], help="ATL to stit translation")
    p.add_argument("formula")
    p.set_defaults(run=_cmd_translate)

    p = sub.add_parser("unravel", parents=[common], help="dump the bounded unraveling")
    p.add_argument("model")
    p.add_argument("state")
    p.add_argument("depth", type=int)
    p.set_defaults(run=_cmd_unravel)

    p = sub.add_parser("verify-frame", parents=[common], help="check frame conditions")
    p.add_argument("model")
    p.add_argument("state")
    p.add_argument("depth", type=int)
    p.set_defaults(run=_cmd_verify_frame)

    p = sub.add_parser("eval-sx", parents=[common], help="evaluate a stit formula")
    p.add_argument("model")
    p.add_argument("formula")
    p.add_argument("index", help="lasso literal, e.g. 'w0 ; s1 | s1'")
    p.set_defaults(run=_cmd_eval_sx)

    p = sub.add_parser("correspond", parents=[common], help="two-sided comparison")
    p.add_argument("model")
    p.add_argument("formula")
    p.add_argument("state")
    p.add_argument("--samples", type=int, default=8)
    p.set_defaults(run=_cmd_correspond)

    p = sub.add_parser("axioms", parents=[common], help="axiom validity sweep")
    p.add_argument("models", nargs="*")
    p.add_argument("--gen", type=int, default=0, help="also sweep N random models")
    p.add_argument("--gen-states", type=int, default=3)
    p.add_argument("--gen-agents", type=int, default=2)
    p.add_argument("--gen-actions", type=int, default=2)
    p.add_argument("--gen-atoms", type=int, default=2)
    p.set_defaults(run=_cmd_axioms)

    p = sub.add_parser("prove", parents=[common], help="check a proof script")
    p.add_argument("script")
    p.add_argument("--spotcheck", nargs="*", default=[], metavar="MODEL")
    p.add_argument("--samples", type=int, default=2)
    p.set_defaults(run=_cmd_prove)

    p = sub.add_parser("random-model", parents=[common], help="emit a random CGS")
    p.add_argument("--states", type=int, default=3)
    p.add_argument("--agents", type=int, default=2)
    p.add_argument("--max-actions", type=int, default=2)
    p.add_argument("--atoms", type=int, default=2)
    p.set_defaults(run=_cmd_random_model)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
