"""Command line: ``mcgverify verify | word | curve | svg``.

Exit status 0 means every check passed, 1 that some claim was falsified
(the report names it), 2 that the input was invalid.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .closed import intersection_bracket, is_essential
from .curves import CurveError, NormalCurve, algebraic_intersection, curve, disjoint
from .replay import ReplayError, Replayer, SeedInvalid, load_and_validate_seeds
from .seeds import SeedError, load_seed_data, search_seeds, seed_curve
from .surface import PolygonSurface
from .words import CurveRegistry, WordEvaluator, WordParseError, parse_word

OK, FALSIFIED, INVALID = 0, 1, 2


class InputError(Exception):
    pass


def _seed_data(args) -> dict:
    if getattr(args, "search_seeds", False):
        return search_seeds(args.genus)
    try:
        return load_seed_data(args.genus, args.seeds)
    except (SeedError, OSError) as exc:
        raise InputError(str(exc)) from None


def _registry(args) -> CurveRegistry:
    data = _seed_data(args)
    S = PolygonSurface(args.genus)
    try:
        return CurveRegistry(S, seed_curve(S, data["a0"]), seed_curve(S, data["b0"]))
    except CurveError as exc:
        raise InputError(f"seed invalid: {exc}") from None


def _resolve(reg: CurveRegistry, ref: str) -> NormalCurve:
    """A registry name or a comma-separated weight vector."""
    if "," in ref:
        try:
            return curve(reg.surface, [int(x) for x in ref.split(",")])
        except (ValueError, CurveError) as exc:
            raise InputError(f"bad curve literal {ref!r}: {exc}") from None
    try:
        return reg.resolve(ref)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None


def _emit(args, payload: dict, text: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(text))


# -- verify --------------------------------------------------------------------


def cmd_verify(args) -> int:
    if args.genus < 5:
        raise InputError("genus must be ≥ 5")
    steps = sorted({int(s) for s in args.steps.split(",")}) if args.steps else [1, 2, 3, 4]
    if any(s not in (1, 2, 3, 4) for s in steps):
        raise InputError("steps must be among 1,2,3,4")
    data = _seed_data(args)
    try:
        reg = load_and_validate_seeds(args.genus, data)
    except SeedInvalid as exc:
        raise InputError(str(exc)) from None
    log = (lambda s: print(s, file=sys.stderr)) if args.verbose else None
    R = Replayer(reg, transport=data.get("transport"), log=log)
    error = None
    certs = []
    try:
        certs = R.run(steps, reflections=not args.no_reflections)
    except ReplayError as exc:
        error = str(exc)
    report = R.report()
    report["error"] = error
    report["certificates"] = [
        {"target": c.target, "length": len(c.raw_word), "reduced_length": len(c.word), "verified": c.verified}
        for c in certs
    ]
    ok = error is None and R.ok and all(c.verified for c in certs)
    report["ok"] = ok
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        with open(out / f"certificates_g{args.genus}.jsonl", "w") as fh:
            for c in certs:
                fh.write(json.dumps(c.as_dict(), sort_keys=True) + "\n")
        (out / f"report_g{args.genus}.json").write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    if args.svg:
        _write_svg(reg, ["a0", "b0"] + [n for n in ("c1", "c2", "e", "f") if n in reg.curves], args.svg, args.genus)
    text = [f"genus {args.genus}: {'VERIFIED' if ok else 'FALSIFIED'}"]
    if report.get("branch"):
        text.append(f"step 2 branch: {report['branch']} genus")
    info = report["info"]
    if "cross_check" in info:
        cc = info["cross_check"]
        text.append(f"step 2 cross-check against {cc['target']}: {'pass' if cc['closed_equal'] else 'FAIL'}")
    if "transport" in info:
        text.append(f"step 2 transport: {info['transport']}")
    for c in report["falsified"]:
        text.append(f"FALSIFIED [{c['step']}] {c['name']}: {c['detail']}")
    if error:
        text.append(f"aborted: {error}")
    text.append(f"{len(certs)} certificates, all verified: {all(c.verified for c in certs)}")
    for c in certs:
        text.append(f"  {c.target}: length {len(c.raw_word)}, reduced {len(c.word)}")
    text.append("timings: " + ", ".join(f"{k} {v:.1f}s" for k, v in report["timings"].items()))
    _emit(args, report, text)
    return OK if ok else FALSIFIED


# -- utilities -------------------------------------------------------------------


def cmd_word(args) -> int:
    reg = _registry(args)
    try:
        w = parse_word(args.word)
    except WordParseError as exc:
        raise InputError(f"parse error at position {exc.position}: {exc}") from None
    c = _resolve(reg, args.curve)
    E = WordEvaluator(reg)
    try:
        img = E.evaluate(w, c)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    hom = reg.homology_class(img)
    payload = {"word": str(w), "curve": args.curve, "weights": list(img.weights),
               "homology": hom, "character": w.character}
    text = [f"weights: {','.join(map(str, img.weights))}", f"homology: {hom}", f"character: {w.character:+d}"]
    _emit(args, payload, text)
    return OK


def cmd_curve(args) -> int:
    reg = _registry(args)
    a = _resolve(reg, args.first)
    payload = {"first": args.first, "weights": list(a.weights), "essential": is_essential(a)}
    text = [f"{args.first}: weights {','.join(map(str, a.weights))}", f"essential: {payload['essential']}"]
    if args.second:
        b = _resolve(reg, args.second)
        payload.update(
            second=args.second,
            disjoint=disjoint(a, b),
            algebraic=algebraic_intersection(a, b),
            bracket=list(intersection_bracket(a, b)),
        )
        text += [
            f"{args.first} and {args.second}: {'disjoint' if payload['disjoint'] else 'intersecting'}",
            f"algebraic intersection: {payload['algebraic']}",
            f"intersection bracket: ({payload['bracket'][0]},{payload['bracket'][1]})",
        ]
    _emit(args, payload, text)
    return OK


def _write_svg(reg, names, outdir, genus) -> list[Path]:
    from .svg import render

    if not names:
        return []
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    # realizations take one or two curves at a time
    for i in range(0, len(names), 2):
        group = names[i:i + 2]
        path = out / f"g{genus}_{'_'.join(group)}.svg"
        path.write_text(render(reg.surface, [(n, _resolve(reg, n)) for n in group]))
        written.append(path)
    return written


def cmd_svg(args) -> int:
    if not args.curves:
        return OK
    reg = _registry(args)
    for p in _write_svg(reg, args.curves, args.out, args.genus):
        print(p)
    return OK


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mcgverify", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(q, minimum):
        q.add_argument("--genus", type=int, required=True)
        q.add_argument("--seeds", help="seed JSON file (default: shipped seeds)")
        q.add_argument("--search-seeds", action="store_true", help="run the seed search instead")
        q.add_argument("--format", choices=("text", "json"), default="text")
        q.set_defaults(min_genus=minimum)

    v = sub.add_parser("verify", help="replay the generation argument and emit certificates")
    common(v, 5)
    v.add_argument("--out", help="directory for certificates and the report")
    v.add_argument("--steps", help="comma-separated steps to run (later steps imply earlier ones)")
    v.add_argument("--svg", help="directory for pictures of the seed and derived curves")
    v.add_argument("--no-reflections", action="store_true", help="skip the two-reflections check")
    v.add_argument("-v", "--verbose", action="store_true")
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("word", help="apply a word to a curve")
    common(w, 2)
    w.add_argument("word")
    w.add_argument("curve")
    w.set_defaults(func=cmd_word)

    c = sub.add_parser("curve", help="describe a curve or a pair of curves")
    common(c, 2)
    c.add_argument("first")
    c.add_argument("second", nargs="?")
    c.set_defaults(func=cmd_curve)

    s = sub.add_parser("svg", help="draw curves on the polygon")
    common(s, 2)
    s.add_argument("curves", nargs="*")
    s.add_argument("--out", default=".")
    s.set_defaults(func=cmd_svg)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.genus < args.min_genus:
            raise InputError("genus must be ≥ 5" if args.min_genus == 5 else f"genus must be ≥ {args.min_genus}")
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
