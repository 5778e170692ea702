"""Command-line front end.

Every command builds one structured document; text output is rendered
from that document, so both formats carry the same information.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .cellularity import cw, is_cellular
from .coeffs import derive_coeffs
from .groups import (FragmentError, FreeProduct, GroupExpr, RankOne, classify,
                     normalize, to_text, type_text)
from .homalg import Unsupported, bifunctor_with_trail
from .moore import (CofiberOfUnit, MooreModel, Telescope, exists_moore,
                    moore_model, presentation_check)
from .oracle import (DEFAULT_BOUND, FiniteAb, OracleBoundError, finite_bifunctor,
                     finite_radical, generated_by_bounded_orders, sweep)
from .parsing import ParseError, parse, parse_bounds, parse_space
from .radical import (PreconditionError, is_quasi_radical, is_radical, radical,
                      universal_extension)
from .telescope import telescope_prefix
from .verdict import Verdict, _plain

EXIT_OK, EXIT_INPUT, EXIT_UNKNOWN = 0, 2, 3


@dataclass
class CommandResult:
    status: str  # ok | input-error | unsupported
    payload: dict = field(default_factory=dict)
    trail: list = field(default_factory=list)
    known: bool = True

    def as_dict(self) -> dict:
        return {"status": self.status, "payload": _plain(self.payload),
                "trail": [e.as_dict() if hasattr(e, "as_dict") else e for e in self.trail]}

    def exit_code(self, strict_known: bool) -> int:
        if self.status == "input-error":
            return EXIT_INPUT
        if strict_known and (self.status == "unsupported" or not self.known):
            return EXIT_UNKNOWN
        return EXIT_OK


class _InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _InputError(message)


def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--format", choices=("text", "structured"), default=argparse.SUPPRESS)
    p.add_argument("--strict-known", action="store_true", default=argparse.SUPPRESS)
    p.add_argument("--prefix-length", type=int, default=argparse.SUPPRESS)
    p.add_argument("--oracle-bound", type=int, default=argparse.SUPPRESS)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="moorecell", parents=[common],
                     description="Moore spaces, radicals and cellularity on a group fragment.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("analyze", parents=[common], help="structure, coefficients, Moore space")
    p.add_argument("group")

    p = sub.add_parser("moore", parents=[common], help="Moore space existence and model")
    p.add_argument("group")
    p.add_argument("--check-presentation", action="store_true")
    p.add_argument("-n", type=int, default=None, help="truncation for the presentation check")

    for kind in ("hom", "ext", "tensor", "tor"):
        p = sub.add_parser(kind, parents=[common], help=f"{kind}(A, B)")
        p.add_argument("a")
        p.add_argument("b")

    p = sub.add_parser("radical", parents=[common], help="G-radical of N")
    p.add_argument("g")
    p.add_argument("n")

    p = sub.add_parser("quasiradical", parents=[common], help="is A quasi G-radical")
    p.add_argument("g")
    p.add_argument("a")

    for name in ("cellular", "cw"):
        p = sub.add_parser(name, parents=[common], help=f"{name} for a Moore space model")
        p.add_argument("--moore", required=True)
        p.add_argument("--space", required=True)
        if name == "cellular":
            p.add_argument("--full", action="store_true", help="evaluate every applicable rule")

    p = sub.add_parser("oracle", parents=[common], help="finite brute-force oracle")
    p.add_argument("--sweep", type=int, default=None, metavar="BOUND")
    p.add_argument("op", nargs="?", choices=("hom", "ext", "tensor", "tor", "radical", "genby"))
    p.add_argument("args", nargs="*")
    return parser


# ---------------------------------------------------------------------------
# Commands


def _group(text: str) -> GroupExpr:
    return normalize(parse(text))


def _verdict_result(v: Verdict, payload: dict) -> CommandResult:
    payload = {**payload, "answer": v.answer.value, "witnesses": v.witnesses,
               "attempted": v.attempted}
    return CommandResult("ok", payload, v.trail, v.answer.known)


def _model_payload(g: GroupExpr, prefix_length: int) -> dict:
    m = moore_model(g)
    out = m.as_dict()
    if isinstance(m, MooreModel) and isinstance(m.recipe, (Telescope, CofiberOfUnit)):
        pre = telescope_prefix(m.recipe.t, prefix_length)
        out["telescope"] = str(pre)
        out["multipliers"] = list(pre.multipliers)
    return out


def cmd_analyze(ns) -> CommandResult:
    g = _group(ns.group)
    payload = {"group": to_text(g)}
    if not isinstance(g, FreeProduct):
        rep = classify(g)
        payload["structure"] = {
            "torsion": rep.is_torsion, "rank": rep.rank,
            "torsion_subgroup": to_text(rep.torsion_subgroup),
            "torsion_free_part": to_text(rep.torsion_free_part),
            "divisible_primes": str(rep.divisible_primes),
            "uniquely_divisible_primes": str(rep.uniquely_divisible_primes)}
        if isinstance(g, RankOne):
            payload["structure"]["type"] = type_text(g.t)
    payload["coefficients"] = derive_coeffs(g).as_dict()
    v = exists_moore(g)
    payload["moore"] = {"answer": v.answer.value, "witnesses": v.witnesses}
    if v.yes:
        payload["moore"]["model"] = _model_payload(g, ns.prefix_length)
    return CommandResult("ok", payload, v.trail, True)


def cmd_moore(ns) -> CommandResult:
    g = _group(ns.group)
    v = exists_moore(g)
    payload = {"group": to_text(g)}
    if v.yes:
        payload["model"] = _model_payload(g, ns.prefix_length)
        m = moore_model(g)
        if ns.check_presentation:
            if not isinstance(m, MooreModel):
                return CommandResult("unsupported", {**payload, "answer": v.answer.value,
                                                     "reason": m.reason}, v.trail, False)
            n = ns.n if ns.n is not None else ns.prefix_length
            payload["presentation"] = presentation_check(m, n).as_dict()
    return _verdict_result(v, payload)


def cmd_bifunctor(ns) -> CommandResult:
    a, b = _group(ns.a), _group(ns.b)
    value, rules = bifunctor_with_trail(ns.command, a, b)
    payload = {"kind": ns.command, "a": to_text(a), "b": to_text(b),
               "rules": [r.provenance for r in rules]}
    if isinstance(value, Unsupported):
        return CommandResult("unsupported", {**payload, "reason": value.reason}, [], False)
    return CommandResult("ok", {**payload, "result": to_text(value)})


def cmd_radical(ns) -> CommandResult:
    g, n = _group(ns.g), _group(ns.n)
    r = radical(g, n)
    payload = {"g": to_text(g), "n": to_text(n)}
    if isinstance(r, Unsupported):
        return CommandResult("unsupported", {**payload, "reason": r.reason}, [], False)
    # the verdict witnesses already carry radical, reduction and stages
    return _verdict_result(is_radical(g, n), payload)


def cmd_quasiradical(ns) -> CommandResult:
    g, a = _group(ns.g), _group(ns.a)
    v = is_quasi_radical(g, a)
    ext = universal_extension(g, a)
    return _verdict_result(v, {"g": to_text(g), "a": to_text(a),
                               "universal_extension": ext.as_dict()})


def _model_and_space(ns):
    g = _group(ns.moore)
    m = moore_model(g)
    if not isinstance(m, MooreModel):
        raise PreconditionError(f"no two-dimensional model for {to_text(g)}: {m.reason}")
    return m, parse_space(ns.space)


def cmd_cellular(ns) -> CommandResult:
    m, x = _model_and_space(ns)
    v = is_cellular(m, x, full=ns.full)
    return _verdict_result(v, {"moore": to_text(m.group), "recipe": str(m.recipe),
                               "space": str(x)})


def cmd_cw(ns) -> CommandResult:
    m, x = _model_and_space(ns)
    r = cw(m, x)
    payload = {"moore": to_text(m.group), "space": str(x),
               "cw": str(r.space) if r.known else None, "attempted": r.attempted}
    if not r.known:
        payload["reason"] = "no cascade rule determines the cellularization"
        return CommandResult("unsupported", payload, r.trail, False)
    return CommandResult("ok", payload, r.trail)


def cmd_oracle(ns) -> CommandResult:
    bound = ns.oracle_bound
    if ns.sweep is not None:
        report = sweep(ns.sweep)
        report.pop("seconds")  # keep output byte-identical across runs
        return CommandResult("ok", report, [], not report["mismatches"])
    if ns.op is None:
        raise _InputError("oracle needs an operation or --sweep")
    args = ns.args

    def fin(text):
        return FiniteAb.from_group(_group(text))

    if ns.op == "genby":
        if len(args) != 2:
            raise _InputError("usage: oracle genby <N> <p:k,...>")
        n = fin(args[0])
        ok = generated_by_bounded_orders(n, parse_bounds(args[1]), bound)
        return CommandResult("ok", {"n": str(n), "bounds": args[1], "generated": ok})
    if len(args) != 2:
        raise _InputError(f"usage: oracle {ns.op} <A> <B>")
    a, b = fin(args[0]), fin(args[1])
    if ns.op == "radical":
        r = finite_radical(a, b, bound)
        return CommandResult("ok", {"g": str(a), "n": str(b), "radical": str(r.radical),
                                    "reduction": str(r.reduction), "stages": r.stages})
    return CommandResult("ok", {"kind": ns.op, "a": str(a), "b": str(b),
                                "result": str(finite_bifunctor(ns.op, a, b, bound))})


COMMANDS = {
    "analyze": cmd_analyze, "moore": cmd_moore, "hom": cmd_bifunctor, "ext": cmd_bifunctor,
    "tensor": cmd_bifunctor, "tor": cmd_bifunctor, "radical": cmd_radical,
    "quasiradical": cmd_quasiradical, "cellular": cmd_cellular, "cw": cmd_cw,
    "oracle": cmd_oracle,
}

DEFAULTS = {"format": "text", "strict_known": False, "prefix_length": 8,
            "oracle_bound": DEFAULT_BOUND}


def _namespace(argv):
    ns = build_parser().parse_args(argv)
    for k, v in DEFAULTS.items():
        if not hasattr(ns, k):
            setattr(ns, k, v)
    return ns


def run_command(argv) -> CommandResult:
    """Parse ``argv`` and run one command; never raises on bad input."""
    try:
        ns = _namespace(argv)
    except _InputError as e:
        return CommandResult("input-error", {"error": str(e)}, [], False)
    try:
        return COMMANDS[ns.command](ns)
    except ParseError as e:
        return CommandResult("input-error", {"error": str(e), "position": e.pos}, [], False)
    except (_InputError, FragmentError, PreconditionError, OracleBoundError, ValueError) as e:
        payload = {"error": str(e)}
        if isinstance(e, PreconditionError) and e.witnesses:
            payload["witnesses"] = e.witnesses
        return CommandResult("input-error", payload, [], False)


# ---------------------------------------------------------------------------
# Rendering


def render_text(doc: dict) -> str:
    lines = [f"status: {doc['status']}"]

    def walk(v, indent):
        pad = "  " * indent
        if isinstance(v, dict):
            for k, x in v.items():
                if _nested(x):
                    lines.append(f"{pad}{k}:")
                    walk(x, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {_scalar(x)}")
        elif isinstance(v, list):
            for x in v:
                if _nested(x):
                    lines.append(f"{pad}-")
                    walk(x, indent + 1)
                else:
                    lines.append(f"{pad}- {_scalar(x)}")

    walk(doc["payload"], 0)
    if doc["trail"]:
        lines.append("trail:")
        for e in doc["trail"]:
            lines.append(f"  [{e['rule']}] {e['citation']}: {e['anchor']}")
    return "\n".join(lines)


def _nested(x) -> bool:
    if isinstance(x, dict):
        return bool(x)
    return isinstance(x, list) and any(isinstance(y, (dict, list)) for y in x)


def _scalar(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, dict):
        return "{}"
    if isinstance(x, list):
        return "[" + ", ".join(_scalar(y) for y in x) + "]"
    return str(x)


def render(result: CommandResult, fmt: str) -> str:
    doc = result.as_dict()
    if fmt == "structured":
        return json.dumps(doc, indent=2)
    return render_text(doc)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    result = run_command(argv)
    try:
        ns = _namespace(argv)
        fmt, strict = ns.format, ns.strict_known
    except _InputError:
        fmt, strict = ("structured" if "structured" in argv else "text"), "--strict-known" in argv
    out = render(result, fmt)
    stream = sys.stderr if result.status == "input-error" and fmt == "text" else sys.stdout
    print(out, file=stream)
    return result.exit_code(strict)


if __name__ == "__main__":
    sys.exit(main())
