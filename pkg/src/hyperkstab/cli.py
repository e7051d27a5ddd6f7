"""Command-line front end.

Exit codes: 0 for any computed verdict (including "not log Fano" and
"not class P"), 1 for unreadable or invalid input, 2 when a sub-command's
precondition fails (e.g. the hyperplanes given to ``beta --flat`` have
empty intersection).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import arrangement as arr
from . import classp, generators, gitdual, stability
from .exactq import format_rat, parse_rat
from .lattice import all_flats, closure_of, flat_weight

SCHEMA = "1"


class InputError(Exception):
    pass


class PreconditionError(Exception):
    pass


def _read(path: str) -> bytes:
    try:
        if path == "-":
            return sys.stdin.buffer.read()
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_arrangement(path: str) -> arr.Arrangement:
    try:
        return arr.parse(_read(path))
    except (arr.ParseError, arr.ArrangementError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _rats(text: str) -> list[Fraction]:
    try:
        return [parse_rat(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _indices(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"bad index list {text!r}") from None


def _flat_doc(a, w) -> dict | None:
    if w is None:
        return None
    return {
        "closure": list(w.closure),
        "codim": w.codim,
        "d": format_rat(flat_weight(a, w, check=False)),
    }


# -- commands --------------------------------------------------------------


def classify_report(a: arr.Arrangement) -> dict:
    result = stability.classify(a)
    report = {
        "verdict": result.verdict.value,
        "dim": a.dim,
        "m": a.m,
        "total_degree": format_rat(arr.total_degree(a)),
        "tau": None,
        "lct_cy": None,
        "witness": list(result.witness.closure) if result.witness else None,
        "witness_codim": result.witness.codim if result.witness else None,
        "witness_d": format_rat(flat_weight(a, result.witness, check=False))
        if result.witness
        else None,
        "class_p": None,
        "note": result.note,
    }
    if a.m:
        tau = Fraction(a.dim + 1) / arr.total_degree(a)
        report["tau"] = format_rat(tau)
        report["lct_cy"] = format_rat(stability.lct(stability.scale_to_cy(a)))
    if result.verdict in (
        stability.Verdict.POLYSTABLE_NOT_K_STABLE,
        stability.Verdict.SEMISTABLE_NOT_POLYSTABLE,
    ) and a.m:
        report["class_p"] = result.verdict is stability.Verdict.POLYSTABLE_NOT_K_STABLE
    return report


def cmd_classify(args) -> dict:
    return classify_report(_load_arrangement(args.file))


def cmd_lct(args) -> dict:
    a = _load_arrangement(args.file)
    if a.m == 0:
        raise PreconditionError("lct of the empty arrangement is undefined")
    value = stability.lct(a)
    first = next(
        w for w in all_flats(a) if Fraction(w.codim) / flat_weight(a, w, check=False) == value
    )
    return {"lct": format_rat(value), "attained_at": _flat_doc(a, first)}


def cmd_flats(args) -> dict:
    a = _load_arrangement(args.file)
    flats = []
    for w in all_flats(a):
        doc = _flat_doc(a, w)
        doc["ratio"] = format_rat(Fraction(w.codim) / flat_weight(a, w, check=False))
        flats.append(doc)
    return {"count": len(flats), "flats": flats}


def cmd_beta(args) -> dict:
    a = _load_arrangement(args.file)
    idx = _indices(args.flat)
    try:
        w = closure_of(a, idx)
    except (IndexError, ValueError) as exc:
        raise PreconditionError(str(exc)) from None
    if w is None:
        raise PreconditionError(f"hyperplanes {idx} have empty intersection")
    try:
        beta = stability.beta_hat_blowup(a, w)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None
    return {
        "beta_hat": format_rat(beta.value),
        "c": beta.c,
        "dW": format_rat(beta.dW),
        "d": format_rat(beta.d),
        "flat": list(w.closure),
    }


def cmd_decompose(args) -> dict:
    a = _load_arrangement(args.file)
    if a.m == 0:
        raise PreconditionError("cannot scale the empty arrangement to Calabi-Yau")
    g = stability.scale_to_cy(a)
    bad = classp.class_p_obstruction(g)
    if bad is not None:
        return {
            "class_p": False,
            "failing_center": list(bad.closure),
            "failing_flat": _flat_doc(g, bad),
        }
    dec = classp.decompose(g)
    return {"class_p": True, "factors": dec.to_document()}


def cmd_git(args) -> dict:
    try:
        pc = gitdual.parse(_read(args.file))
    except (arr.ParseError, ValueError) as exc:
        raise InputError(f"{args.file}: {exc}") from None
    if pc.total_weight <= 0:
        raise PreconditionError("total weight must be positive")
    hm = gitdual.hm_check(pc)
    result = gitdual.git_classify(pc)
    return {
        "semistable": hm.semistable,
        "stable": hm.stable,
        "span_witness": list(hm.witness) if hm.witness is not None else None,
        "span_witness_dim": hm.witness_dim,
        "verdict": result.verdict.value,
        "witness": list(result.witness.closure) if result.witness else None,
        "note": result.note,
    }


def cmd_gen(args) -> dict:
    params: dict = {"seed": args.seed}
    for key in ("n", "m", "extras"):
        if getattr(args, key) is not None:
            params[key] = getattr(args, key)
    if args.weights is not None:
        params["weights"] = _rats(args.weights)
    if args.t is not None:
        params["t"] = _rats(args.t)[0]
    if args.kind == "sjoin":
        params["factors"] = [_load_arrangement(f) for f in args.factor or []]
    try:
        a = generators.generate(generators.GenSpec(args.kind, params))
    except KeyError as exc:
        raise InputError(f"generator {args.kind!r} needs --{exc.args[0]}") from None
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None
    return {"arrangement": arr.to_document(a)}


# -- output ----------------------------------------------------------------


def _text(command: str, report: dict) -> str:
    if command == "gen":
        return arr.serialize(arr.from_document(report["arrangement"])).decode()
    lines = []
    for key, value in report.items():
        if key == "flats":
            for f in value:
                lines.append(
                    f"  {f['closure']}  codim={f['codim']}  d={f['d']}  c/d={f['ratio']}"
                )
        elif key == "factors":
            for i, f in enumerate(value):
                lines.append(f"  factor {i}: P^{f['ambient_dim']}")
                if f["arrangement"]:
                    for h in f["arrangement"]["hyperplanes"]:
                        lines.append(f"    ({', '.join(h['coeffs'])}) weight {h['weight']}")
        elif isinstance(value, dict):
            lines.append(f"{key}: {value['closure']} codim={value['codim']} d={value['d']}")
        elif value is None:
            continue
        else:
            lines.append(f"{key}: {value if not isinstance(value, bool) else str(value).lower()}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=0, help="random seed (generators)")
    common.add_argument("--out", help="write the report to FILE instead of stdout")

    parser = argparse.ArgumentParser(
        prog="hyperkstab",
        description="Exact K-stability of log Fano hyperplane arrangements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="K-stability verdict")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("lct", parents=[common], help="log canonical threshold")
    p.add_argument("file")
    p.set_defaults(func=cmd_lct)

    p = sub.add_parser("flats", parents=[common], help="list the intersection lattice")
    p.add_argument("file")
    p.set_defaults(func=cmd_flats)

    p = sub.add_parser("beta", parents=[common], help="beta-hat of the blowup along a flat")
    p.add_argument("file")
    p.add_argument("--flat", required=True, help="comma-separated hyperplane indices")
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser(
        "decompose", parents=[common], help="class-P decomposition of the Calabi-Yau scaling"
    )
    p.add_argument("file")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser(
        "git",
        parents=[common],
        help="GIT check of a dual point configuration",
        description="Numerical GIT (semi)stability of weighted points in the dual "
        "projective space, plus the verdict for the dual arrangement. Any positive "
        "total weight is accepted by the GIT check; the verdict is not_log_fano "
        "when the total weight is at least n+1.",
    )
    p.add_argument("file")
    p.set_defaults(func=cmd_git)

    p = sub.add_parser("gen", parents=[common], help="generate an arrangement")
    p.add_argument("kind", choices=generators.KINDS)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--extras", type=int)
    p.add_argument("--weights", help="comma-separated rationals (one value is repeated)")
    p.add_argument("--t", help="rational parameter of alpha_example")
    p.add_argument("--factor", action="append", help="factor arrangement file (sjoin)")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return 2
    if args.json:
        text = json.dumps({"schema": SCHEMA, "command": args.command, **report}, indent=2) + "\n"
    else:
        text = _text(args.command, report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
