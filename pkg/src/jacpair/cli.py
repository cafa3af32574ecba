"""Command-line front end.

Exit codes: 0 success / automorphism, 1 inconclusive, 2 not a Jacobian pair,
3 input error, 4 no witness (search cap reached or ruled out).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import gcd
from typing import Optional

from . import __version__
from .bipoly import BiPoly, jacobian
from .checker import (
    Certificate,
    CompositionWitness,
    Outcome,
    ShapeParams,
    TheoremTag,
    Verdict,
    check_paper_theorems,
    decide,
    exclude_gcd,
    recheck_certificate,
    shape_constraints,
)
from .errors import (
    JacpairError,
    NoWitness,
    NotJacobianPair,
    NotReducible,
    PolySyntaxError,
    PreconditionViolated,
    SearchExhausted,
    StepLimitExceeded,
)
from .invariants import compute_invariants
from .inverter import (
    Decomposition,
    ElementaryStep,
    PolyMap,
    StepKind,
    compose_maps,
    invert_tame,
    verify_factored_inverse,
)
from .numtheory import DEFAULT_L_MAX, LemmaWitness, is_prime
from .parser import format_poly, parse_poly

EXIT_OK, EXIT_INCONCLUSIVE, EXIT_NOT_JACOBIAN, EXIT_INPUT, EXIT_EXHAUSTED = range(5)


# -- JSON encoding -----------------------------------------------------------

def _step_to_json(step: ElementaryStep) -> dict:
    if step.kind is StepKind.AFFINE:
        return {
            "kind": step.kind.value,
            "matrix": [[str(c) for c in row] for row in step.matrix],
            "shift": [str(c) for c in step.shift],
        }
    return {"kind": step.kind.value, "h": format_poly(step.h)}


def _step_from_json(doc: dict) -> ElementaryStep:
    kind = StepKind(doc["kind"])
    if kind is StepKind.AFFINE:
        (a, b), (c, d) = [[Fraction(v) for v in row] for row in doc["matrix"]]
        e, f = (Fraction(v) for v in doc["shift"])
        return ElementaryStep.affine(a, b, c, d, e, f)
    return ElementaryStep(kind, h=parse_poly(doc["h"]))


def witness_json(wit) -> dict:
    out = {
        "orientation": wit.orientation,
        "L": wit.L,
        "degrees": [wit.deg_gfx, wit.deg_gfy],
        "gcd": wit.gcd_composed,
        "case": wit.case_label,
        "w": wit.w,
        "composed_theorem": wit.composed_theorem.value if wit.composed_theorem else None,
        "lemma": None,
    }
    if wit.lemma is not None:
        lw = wit.lemma
        out["lemma"] = {"valA": lw.valA, "valC": lw.valC, "prime": lw.prime_max, "eps": lw.eps}
    return out


def certificate_json(p: BiPoly, q: BiPoly, verdict: Verdict) -> dict:
    cert: Optional[Certificate] = verdict.certificate
    doc = {
        "verdict": verdict.outcome.value,
        "p": format_poly(p),
        "q": format_poly(q),
        "jacobian": format_poly(verdict.jacobian),
        "theorem": cert.theorem.value if cert else None,
        "orientation": cert.orientation if cert else None,
        "invariants": verdict.report.summary() if verdict.report else None,
        "witness": witness_json(cert.witness) if cert and cert.witness else None,
        "inverse": None,
        "decomposition": None,
        "note": verdict.reduction_note or None,
    }
    if cert is not None and cert.inverse is not None:
        doc["inverse"] = {"px": format_poly(cert.inverse.px), "py": format_poly(cert.inverse.py)}
    if cert is not None and cert.decomposition is not None:
        doc["decomposition"] = [_step_to_json(s) for s in cert.decomposition.steps]
    return doc


def verify_certificate_json(doc: dict) -> bool:
    """Re-verify an emitted automorphism certificate from its JSON alone."""
    if doc.get("verdict") != Outcome.AUTOMORPHISM.value:
        return False
    p, q = parse_poly(doc["p"]), parse_poly(doc["q"])
    jac = jacobian(p, q)
    if jac.is_zero or not jac.is_constant or format_poly(jac) != doc["jacobian"]:
        return False
    inv = doc.get("invariants")
    if inv is not None and compute_invariants(p, q).summary() != inv:
        return False
    lemma = (doc.get("witness") or {}).get("lemma")
    if lemma is not None:
        top = max(lemma["valA"], lemma["valC"])
        if top != lemma["prime"] or not is_prime(top):
            return False
        if gcd(lemma["eps"], lemma["valA"]) != 1 or gcd(lemma["eps"], lemma["valC"]) != 1:
            return False
    inverse = decomposition = witness = None
    if doc.get("inverse"):
        inverse = PolyMap(parse_poly(doc["inverse"]["px"]), parse_poly(doc["inverse"]["py"]))
    if doc.get("decomposition") is not None:
        decomposition = Decomposition(tuple(_step_from_json(s) for s in doc["decomposition"]))
        if inverse is None or not verify_factored_inverse(PolyMap(p, q), decomposition, inverse):
            return False
    if doc.get("witness"):
        w = doc["witness"]
        lw = None
        if lemma is not None:
            lw = LemmaWitness(L=w["L"], valA=lemma["valA"], valC=lemma["valC"],
                              prime_max=lemma["prime"], eps=lemma["eps"])
        witness = CompositionWitness(
            orientation=w["orientation"], L=w["L"], lemma=lw,
            deg_gfx=w["degrees"][0], deg_gfy=w["degrees"][1],
            gcd_composed=w["gcd"], case_label=w["case"], w=w["w"],
        )
        if gcd(*w["degrees"]) != w["gcd"]:
            return False
    cert = Certificate(TheoremTag(doc["theorem"]), witness=witness, inverse=inverse,
                       decomposition=decomposition, orientation=doc.get("orientation"))
    return recheck_certificate(p, q, cert)


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


# -- argument handling -------------------------------------------------------

def _read_expr(text: str, stdin_lines: list) -> BiPoly:
    if text == "-":
        if not stdin_lines:
            stdin_lines.extend(line.strip() for line in sys.stdin.read().splitlines() if line.strip())
        if not stdin_lines:
            raise PolySyntaxError("no expression on stdin", 0)
        text = stdin_lines.pop(0)
    return parse_poly(text)


def _pair(args):
    lines: list = []
    return _read_expr(args.p, lines), _read_expr(args.q, lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="jacpair",
        description="Certify two-variable polynomial maps with unit Jacobian as automorphisms.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def pair_cmd(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("-p", required=True, help="image of x ('-' reads stdin)")
        sp.add_argument("-q", required=True, help="image of y ('-' reads stdin)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    sp = pair_cmd("check", "run the full decision pipeline")
    sp.add_argument("--no-inverter", action="store_true", help="skip the tame-inversion fallback")
    sp.add_argument("--lmax", type=int, default=DEFAULT_L_MAX, help="witness search cap")
    sp.add_argument("--orientation", choices=("auto", "ac", "bd"), default="auto")

    pair_cmd("invariants", "print n, m, r, s, u, v, A, B, C, D and friends")

    sp = pair_cmd("witness", "build the shear witness for the first applicable (A,C)/(B,D) criterion")
    sp.add_argument("--lmax", type=int, default=DEFAULT_L_MAX)
    sp.add_argument("--orientation", choices=("auto", "ac", "bd"), default="auto")

    sp = pair_cmd("invert", "invert by elementary reduction")
    sp.add_argument("--max-steps", type=int, default=None)

    sp = pair_cmd("compose", "compose (p, q) with an outer map or the shear (x, y + x^L)")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--shear", type=int, metavar="L", help="compute (p(x, y + x^L), q(x, y + x^L))")
    g.add_argument("--outer-p", help="first component of the outer map")
    sp.add_argument("--outer-q", help="second component of the outer map")

    sp = sub.add_parser("shape", help="counterexample-shape constraints")
    sp.add_argument("-a", "--alpha", type=int, required=True)
    sp.add_argument("-b", "--beta", type=int, required=True)
    sp.add_argument("-m", "--mu", type=int, required=True)
    sp.add_argument("-n", "--nu", type=int, required=True)
    sp.add_argument("--gcd-target", type=int, default=None,
                    help="also enumerate d*(alpha'+beta') = T and report impossible splits")
    sp.add_argument("--json", action="store_true")
    return ap


# -- subcommands -------------------------------------------------------------

def _cmd_check(args, out) -> int:
    p, q = _pair(args)
    verdict = decide(p, q, use_inverter_fallback=not args.no_inverter,
                     L_max=args.lmax, orientation=args.orientation)
    if args.json:
        out.write(_dump(certificate_json(p, q, verdict)) + "\n")
    else:
        out.write(f"verdict: {verdict.outcome.value}\n")
        out.write(f"jacobian: {verdict.jacobian}\n")
        cert = verdict.certificate
        if cert is not None:
            out.write(f"theorem: {cert.theorem.value}\n")
            if cert.orientation:
                out.write(f"orientation: {cert.orientation}\n")
            if cert.witness is not None:
                w = cert.witness
                out.write(f"witness: L={w.L} degrees=({w.deg_gfx}, {w.deg_gfy}) "
                          f"gcd={w.gcd_composed} [{w.case_label}]\n")
            if cert.inverse is not None:
                out.write(f"inverse: ({cert.inverse.px}, {cert.inverse.py})\n")
        if verdict.report is not None:
            inv = verdict.report.summary()
            out.write("invariants: " + " ".join(f"{k}={v}" for k, v in inv.items()) + "\n")
        if verdict.reduction_note:
            out.write(f"note: {verdict.reduction_note}\n")
    return {
        Outcome.AUTOMORPHISM: EXIT_OK,
        Outcome.INCONCLUSIVE: EXIT_INCONCLUSIVE,
        Outcome.NOT_JACOBIAN_PAIR: EXIT_NOT_JACOBIAN,
    }[verdict.outcome]


def _cmd_invariants(args, out) -> int:
    p, q = _pair(args)
    inv = compute_invariants(p, q)
    if args.json:
        out.write(_dump(inv.as_dict()) + "\n")
    else:
        for k, v in inv.summary().items():
            out.write(f"{k} = {v}\n")
        out.write(f"deg p = {inv.total_p}, deg q = {inv.total_q}, gcd = {inv.gcd_total}\n")
        for name, prof in (("ac", inv.ac), ("bd", inv.bd)):
            out.write(f"[{name}] " + " ".join(f"{k}={v}" for k, v in prof.as_dict().items()) + "\n")
    return EXIT_OK


def _cmd_witness(args, out) -> int:
    p, q = _pair(args)
    orientations = ("ac", "bd") if args.orientation == "auto" else (args.orientation,)
    notes: list = []
    cert = check_paper_theorems(p, q, L_max=args.lmax, orientations=orientations, notes=notes)
    if cert is None:
        if args.json:
            out.write(_dump({"theorem": None, "witness": None, "skipped": notes}) + "\n")
        else:
            out.write("no (A,C)/(B,D) criterion yields a witness\n")
            for n in notes:
                out.write(f"  skipped {n}\n")
        return EXIT_INCONCLUSIVE
    w = cert.witness
    if args.json:
        out.write(_dump({"theorem": cert.theorem.value, "witness": witness_json(w)}) + "\n")
    else:
        out.write(f"theorem: {cert.theorem.value} ({w.orientation})\n")
        out.write(f"L = {w.L}\ndeg_gfx = {w.deg_gfx}\ndeg_gfy = {w.deg_gfy}\n"
                  f"gcd_composed = {w.gcd_composed}\n")
        if w.lemma is not None:
            out.write(f"lemma: valA={w.lemma.valA} valC={w.lemma.valC} prime={w.lemma.prime_max}\n")
        out.write(f"case: {w.case_label}\n")
    return EXIT_OK


def _cmd_invert(args, out) -> int:
    p, q = _pair(args)
    try:
        inverse, steps = invert_tame(p, q, args.max_steps)
    except (NotReducible, StepLimitExceeded) as exc:
        out.write((_dump({"inverse": None, "error": str(exc)}) if args.json else f"not inverted: {exc}") + "\n")
        return EXIT_INCONCLUSIVE
    ok = verify_factored_inverse(PolyMap(p, q), steps, inverse)
    if args.json:
        out.write(_dump({
            "inverse": {"px": format_poly(inverse.px), "py": format_poly(inverse.py)},
            "decomposition": [_step_to_json(s) for s in steps.steps],
            "verified": ok,
        }) + "\n")
    else:
        out.write(f"inverse: ({inverse.px}, {inverse.py})\n")
        out.write(f"steps: {len(steps)}\nverified: {ok}\n")
    return EXIT_OK if ok else EXIT_INCONCLUSIVE


def _cmd_compose(args, out) -> int:
    p, q = _pair(args)
    if args.shear is not None:
        if args.shear < 0:
            raise PreconditionViolated("L must be >= 0")
        s = BiPoly.y() + BiPoly.x(args.shear)
        res = PolyMap(p.compose(BiPoly.x(), s), q.compose(BiPoly.x(), s))
    else:
        if args.outer_q is None:
            raise PreconditionViolated("--outer-p needs --outer-q")
        lines: list = []
        outer = PolyMap(_read_expr(args.outer_p, lines), _read_expr(args.outer_q, lines))
        res = compose_maps(outer, PolyMap(p, q))
    if args.json:
        out.write(_dump({"px": format_poly(res.px), "py": format_poly(res.py)}) + "\n")
    else:
        out.write(f"{res.px}\n{res.py}\n")
    return EXIT_OK


def _cmd_shape(args, out) -> int:
    rep = shape_constraints(ShapeParams(args.alpha, args.beta, args.mu, args.nu))
    sp = rep.params
    cases = exclude_gcd(args.gcd_target) if args.gcd_target else None
    if args.json:
        doc = {
            "alpha": sp.alpha, "beta": sp.beta, "mu": sp.mu, "nu": sp.nu,
            "d": sp.d, "alpha_p": sp.alpha_p, "beta_p": sp.beta_p, "A": sp.A, "C": sp.C,
            "gcd_AC": rep.gcd_AC, "cond_i": rep.cond_i, "cond_ii": rep.cond_ii,
            "excluded": rep.excluded, "reasons": rep.reasons,
        }
        if cases is not None:
            doc["gcd_cases"] = [vars(c) for c in cases]
        out.write(_dump(doc) + "\n")
    else:
        out.write(f"d={sp.d} alpha'={sp.alpha_p} beta'={sp.beta_p} A={sp.A} C={sp.C} "
                  f"gcd(A,C)={rep.gcd_AC}\n")
        out.write(f"condition (i): {rep.cond_i}  condition (ii): {rep.cond_ii}\n")
        out.write(f"excluded: {rep.excluded}\n")
        for r in rep.reasons:
            out.write(f"  - {r}\n")
        for c in cases or ():
            out.write(f"(d={c.d}, alpha'+beta'={c.s}): "
                      f"{'rejected' if c.rejected else 'open'} - {c.reason}\n")
    return EXIT_OK


_COMMANDS = {
    "check": _cmd_check,
    "invariants": _cmd_invariants,
    "witness": _cmd_witness,
    "invert": _cmd_invert,
    "compose": _cmd_compose,
    "shape": _cmd_shape,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args, out)
    except NotJacobianPair as exc:
        err.write(f"error: {exc}\n")
        return EXIT_NOT_JACOBIAN
    except (SearchExhausted, NoWitness) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_EXHAUSTED
    except (PolySyntaxError, PreconditionViolated) as exc:
        err.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except JacpairError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


def main(argv=None):
    try:
        code = run(argv)
    except SystemExit as exc:
        # argparse usage errors are input errors
        code = EXIT_INPUT if exc.code not in (0, None) else 0
    sys.exit(code)


if __name__ == "__main__":
    main()
