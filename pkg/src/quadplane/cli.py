"""Command-line front end; every command prints one JSON report.

Exit status: 0 on success, 1 for malformed input or an impossible request,
2 when a certificate disagrees with the Sturm oracle.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time
import warnings
from fractions import Fraction
from typing import Optional, Sequence

from .cuboid import CuboidParams, cubic_param_transform, cuboid_char_eval
from .errors import CertificateDisagreement, MalformedInput, NotInvertibleError, PreconditionError, QuadPlaneError
from .exactnum import Poly1, format_rational, parse_rational
from .maps import QuadMap
from .quadform import classify_form, form_of, light_vectors
from .quadmap import decide_invertibility, invert, precanonicalize
from .rootcert import cubic_classify, quartic_exactly_one_real
from .sturm import falsify, preimage_count, sturm_count

EXIT_OK, EXIT_INPUT, EXIT_DISAGREE = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kw):
        super().__init__(*args, **kw)
        # let "-3/4" through as a positional rational
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$")

    def error(self, message):
        raise _UsageError(message)


def _rat(text: str) -> Fraction:
    return parse_rational(text)


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise MalformedInput(f"not an integer: {text!r}") from exc


def _load_map(path: str) -> QuadMap:
    try:
        with (sys.stdin if path == "-" else open(path)) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"malformed JSON in {path}: {exc.msg}") from exc
    return QuadMap.from_json(doc)


def _cmd_classify(args) -> dict:
    f = _load_map(args.file)
    t = form_of(f)
    v = decide_invertibility(f, args.bound)
    return {
        "form": t.to_json(),
        "class": classify_form(t).to_json(),
        "light_vectors": light_vectors(t).to_json(),
        "verdict": v.to_json(),
    }


def _cmd_reduce(args) -> dict:
    f = _load_map(args.file)
    tr = precanonicalize(f)
    if tr.numeric and not args.numeric:
        raise PreconditionError("this reduction needs irrational scalings; rerun with --numeric")
    return {"transcript": tr.to_json(), "replay_matches": tr.replay_matches()}


def _cmd_invert(args) -> dict:
    f = _load_map(args.file)
    v = decide_invertibility(f, 0)
    p, q = invert(v, args.target[0], args.target[1])
    return {"status": v.status.value, "preimage": [format_rational(p), format_rational(q)]}


def _cmd_witness(args) -> dict:
    f = _load_map(args.file)
    w = falsify(f, args.bound)
    return {"bound": args.bound, "witness": None if w is None else w.to_json()}


def _cmd_roots(args) -> dict:
    if args.kind == "cubic":
        if len(args.coeffs) != 3:
            raise MalformedInput("roots cubic takes A1 A2 A3")
        return cubic_classify(*args.coeffs).to_json()
    if len(args.coeffs) != 4:
        raise MalformedInput("roots quartic takes A1 A2 A3 A4")
    return quartic_exactly_one_real(*args.coeffs).to_json()


def _verify_quartic(cs) -> tuple[dict, bool]:
    cert = quartic_exactly_one_real(*cs)
    rc = sturm_count(Poly1([cs[3], cs[2], cs[1], cs[0], 1]))
    agreed = cert.exactly_one_real == (rc.distinct_real == 1)
    return {"certificate": cert.to_json(), "oracle": rc.to_json()}, agreed


def _verify_cubic(cs) -> tuple[dict, bool]:
    cert = cubic_classify(*cs)
    rc = sturm_count(Poly1([cs[2], cs[1], cs[0], 1]))
    agreed = cert.distinct_real_count == rc.distinct_real
    return {"certificate": cert.to_json(), "oracle": rc.to_json()}, agreed


def _verify_map(f: QuadMap, seed: int, samples: int) -> tuple[dict, bool]:
    v = decide_invertibility(f, 1)
    rng = random.Random(seed)
    checks = []
    agreed = True
    if v.witness is not None:
        tp, tq = v.witness.target
        fb = preimage_count(f, tp, tq)
        ok = fb.count != 1
        checks.append({"target": [format_rational(tp), format_rational(tq)], "oracle_count": fb.count, "ok": ok})
        agreed &= ok
    if v.invertible and not f.is_affine():
        for _ in range(samples):
            tp, tq = Fraction(rng.randint(-20, 20), rng.randint(1, 5)), Fraction(rng.randint(-20, 20), rng.randint(1, 5))
            fb = preimage_count(f, tp, tq)
            ok = fb.count == 1 and fb.exact_points() == [invert(v, tp, tq)]
            checks.append({"target": [format_rational(tp), format_rational(tq)], "oracle_count": fb.count, "ok": ok})
            agreed &= ok
    return {"verdict": v.to_json(), "checks": checks}, agreed


def _cmd_verify(args) -> tuple[dict, bool]:
    if args.quartic is not None:
        return _verify_quartic(args.quartic)
    if args.cubic is not None:
        return _verify_cubic(args.cubic)
    if args.file is None:
        raise MalformedInput("verify needs FILE, --quartic or --cubic")
    return _verify_map(_load_map(args.file), args.seed, args.samples)


def _cmd_cuboid(args) -> dict:
    a, p, q = args.values
    if args.op == "eval":
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            val = cuboid_char_eval(a, p, q)
        return {"value": str(val), "warnings": CuboidParams(a, p, q).warnings()}
    pt, qt = cubic_param_transform(a, p, q)
    return {"image": [str(pt), str(qt)]}


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="quadplane", description="Quadratic planar maps and real-root certificates.")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized sampling (default 0)")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("classify", help="associated form, class and invertibility verdict")
    s.add_argument("file")
    s.add_argument("--bound", type=int, default=2, help="falsifier search bound")

    s = sub.add_parser("reduce", help="reduction transcript to the normal form")
    s.add_argument("file")
    s.add_argument("--numeric", action="store_true", help="allow binary64 scalings")

    s = sub.add_parser("invert", help="exact preimage of a target")
    s.add_argument("file")
    s.add_argument("--target", nargs=2, type=_rat, required=True, metavar=("P", "Q"))

    s = sub.add_parser("witness", help="first non-injectivity or non-surjectivity witness on a grid")
    s.add_argument("file")
    s.add_argument("--bound", type=int, default=4)

    s = sub.add_parser("roots", help="closed-form real-root certificates")
    s.add_argument("kind", choices=["cubic", "quartic"])
    s.add_argument("coeffs", nargs="+", type=_rat)

    s = sub.add_parser("verify", help="cross-check a certificate against the Sturm oracle")
    s.add_argument("file", nargs="?")
    s.add_argument("--quartic", nargs=4, type=_rat, metavar=("A1", "A2", "A3", "A4"))
    s.add_argument("--cubic", nargs=3, type=_rat, metavar=("A1", "A2", "A3"))
    s.add_argument("--samples", type=int, default=5, help="random targets checked for invertible maps")

    s = sub.add_parser("cuboid", help="cuboid polynomial and cubic transform")
    s.add_argument("op", choices=["eval", "transform"])
    s.add_argument("values", nargs=3, type=_int, metavar="N")
    return ap


_COMMANDS = {
    "classify": _cmd_classify,
    "reduce": _cmd_reduce,
    "invert": _cmd_invert,
    "witness": _cmd_witness,
    "roots": _cmd_roots,
    "cuboid": _cmd_cuboid,
}


def _emit(doc: dict, out) -> None:
    json.dump(doc, out, indent=2)
    out.write("\n")


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if args.command == "verify":
            result, agreed = _cmd_verify(args)
            code = EXIT_OK if agreed else EXIT_DISAGREE
            report = {"command": "verify", "input": argv, "result": result, "oracle_crosscheck": {"agreed": agreed}}
        else:
            report = {"command": args.command, "input": argv, "result": _COMMANDS[args.command](args)}
            code = EXIT_OK
    except CertificateDisagreement as exc:
        report, code = {"input": argv, "error": {"type": "CertificateDisagreement", "message": str(exc)}}, EXIT_DISAGREE
    except (_UsageError, MalformedInput, PreconditionError, NotInvertibleError, QuadPlaneError, ZeroDivisionError) as exc:
        report, code = {"input": argv, "error": {"type": type(exc).__name__, "message": str(exc)}}, EXIT_INPUT
    report["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    _emit(report, out)
    return code


def main() -> None:
    sys.exit(run())
