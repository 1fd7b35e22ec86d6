"""Command-line front end.

Exit status: 0 success or membership certified, 1 negative mathematical
result, 2 usage or parse error, 3 engine guardrail (degree bound, refused
characteristic).
"""
from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from fractions import Fraction

from . import acceptance
from .birmap import (DegreeBoundExceeded, MapError, ProjMap, affine_jacobian, compose_all,
                     equal_up_to_scalar, jacobian, linear_embed, parse_map, to_affine)
from .builtins import UnknownBuiltin, builtin
from .certify import CertificationError, certify_monomial, certify_tame_elementary, verify
from .fields import FieldError, UnsupportedCharacteristic, parse_field
from .monomial import (GlWord, MonomialMap, NotMonomial, NotUnimodular, f2_orbit_index,
                       from_projective, gl_full_decompose, gl_odd_decompose, is_gl_odd,
                       mat_det)
from .obstruction import contracted_report, discrepancy, gn_obstruction, kth_power_test
from .parse import ParseError, format_poly, parse_matrix, parse_poly
from .poly import NotDivisible
from .words import GnWord, eval_word

OK, NEGATIVE, USAGE, GUARDRAIL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _text(arg: str) -> str:
    """An inline expression, or the contents of the file it names."""
    if arg is not None and os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read().strip()
    return arg


def _load_map(arg: str, field) -> ProjMap:
    s = _text(arg)
    if s is None:
        raise UsageError("a map is required")
    return parse_map(s, field)


def _load_matrix(arg: str):
    s = _text(arg)
    if s is None:
        raise UsageError("--matrix is required")
    if s.lstrip().startswith("{"):
        s = json.dumps(json.loads(s)["matrix"])
    return parse_matrix(s)


def _load_word(arg: str) -> GnWord:
    s = _text(arg)
    if s is None:
        raise UsageError("--word is required")
    obj = json.loads(s)
    if "word" in obj and "letters" not in obj:
        obj = obj["word"]
    return GnWord.from_json(obj)


def _parse_params(s: str | None) -> dict:
    if not s:
        return {}
    s = _text(s)
    if s.lstrip().startswith("{"):
        return json.loads(s)
    out = {}
    for part in s.split(","):
        k, _, v = part.partition("=")
        if not _:
            raise UsageError(f"bad parameter {part!r}; use key=value")
        out[k.strip()] = v.strip()
    return out


def _map_arg(args, i=0):
    maps = list(args.maps or [])
    if args.map:
        maps = args.map + maps
    if len(maps) <= i:
        raise UsageError("missing map argument")
    return maps[i]


# ---------------------------------------------------------------------------
# subcommands: each returns (exit status, text lines, json object)


def cmd_compose(args, F):
    maps = list(args.map or []) + list(args.maps or [])
    if len(maps) < 2:
        raise UsageError("compose needs at least two maps")
    f = compose_all([_load_map(m, F) for m in maps])
    return OK, [str(f)], f.to_json()


def cmd_degree(args, F):
    f = _load_map(_map_arg(args), F)
    return OK, [str(f.degree)], {"degree": f.degree}


def cmd_jacobian(args, F):
    J = jacobian(_load_map(_map_arg(args), F))
    return OK, [format_poly(J)], {"jacobian": format_poly(J)}


def cmd_affine_jacobian(args, F):
    r = affine_jacobian(to_affine(_load_map(_map_arg(args), F)))
    obj = {"numerator": format_poly(r.num), "denominator": format_poly(r.den)}
    return OK, [str(r)], obj


def cmd_square_test(args, F):
    J = jacobian(_load_map(_map_arg(args), F))
    ok, h, dec = kth_power_test(J, args.k)
    obj = {"jacobian": format_poly(J), "k": args.k, "result": ok,
           "root": format_poly(h) if ok else None, "unit": str(dec.unit),
           "factors": [{"poly": format_poly(a), "mult": m} for a, m in dec.factors]}
    line = (f"Jac = {dec.unit} * ({format_poly(h)})^{args.k}" if ok
            else f"Jac is not a constant times a {args.k}-th power")
    return (OK if ok else NEGATIVE), [line], obj


def cmd_discrepancy(args, F):
    f = _load_map(_map_arg(args), F)
    htext = args.poly or (args.maps[1] if args.maps and len(args.maps) > 1 else None)
    if htext is None:
        raise UsageError("discrepancy needs a hypersurface equation (--poly or second argument)")
    h = parse_poly(_text(htext), f.nvars, F)
    d = discrepancy(f, h)
    return OK, [str(d)], {"discrepancy": d}


def cmd_contracted(args, F):
    dec = contracted_report(_load_map(_map_arg(args), F))
    lines = [f"unit {dec.unit}"] + [f"({format_poly(a)})^{m}" for a, m in dec.factors]
    obj = {"unit": str(dec.unit),
           "factors": [{"poly": format_poly(a), "mult": m} for a, m in dec.factors]}
    return OK, lines, obj


def cmd_obstruction(args, F):
    rep = gn_obstruction(_load_map(_map_arg(args), F))
    lines = [rep.verdict]
    if rep.witness:
        lines.append(f"witness ({format_poly(rep.witness[0])})^{rep.witness[1]}")
    return (NEGATIVE if rep.obstructed else OK), lines, rep.to_json()


def cmd_monomial_check(args, F):
    f = _load_map(_map_arg(args), F)
    try:
        m = from_projective(f)
    except NotMonomial as exc:
        return NEGATIVE, [f"not monomial: {exc}"], {"monomial": False, "reason": str(exc)}
    odd = is_gl_odd(m.matrix)
    obj = {"monomial": True, **m.to_json(), "glOdd": odd}
    lines = ["monomial", f"matrix {json.dumps(obj['matrix'])}",
             f"coeffs {', '.join(obj['coeffs'])}", f"GL_odd {odd}"]
    return OK, lines, obj


def cmd_monomial_decompose(args, F):
    A = _load_matrix(args.matrix)
    n = len(A)
    if abs(mat_det(A)) != 1:
        raise NotUnimodular("matrix is not unimodular")
    if args.full or n < 3 or not is_gl_odd(A):
        w: GlWord = gl_full_decompose(A)
    else:
        w = gl_odd_decompose(A)
    lines = [json.dumps(L.to_json()) for L in w.letters]
    return OK, lines or ["(identity)"], w.to_json()


def _cert_result(cert):
    obj = cert.to_json()
    if cert.certified:
        lines = ["certified", f"word length {cert.word.length()}, "
                 f"sigma letters {cert.word.sigma_count()}, verified {cert.verified}"]
        return OK, lines, obj
    rep = cert.obstruction
    lines = ["obstructed", f"{rep.verdict}: witness ({format_poly(rep.witness[0])})^"
             f"{rep.witness[1]} in the Jacobian"]
    return NEGATIVE, lines, obj


def cmd_certify(args, F):
    if args.shear is not None:
        if args.n is None:
            raise UsageError("--shear needs --n")
        v = [int(x) for x in args.shear.replace(",", " ").split()]
        w = certify_tame_elementary(args.n, v, Fraction(args.coeff), F)
        obj = {"result": "word", "verified": True, "word": w.to_json()}
        return OK, ["certified", f"word length {w.length()}"], obj
    if args.matrix is not None:
        A = _load_matrix(args.matrix)
        if args.n is not None and args.n != len(A):
            raise UsageError(f"--n {args.n} does not match a {len(A)}x{len(A)} matrix")
        coeffs = [F(Fraction(c)) for c in args.coeffs.split(",")] if args.coeffs else None
        m = MonomialMap(tuple(coeffs) if coeffs else (1,) * len(A), A, F)
    else:
        f = _load_map(_map_arg(args), F)
        try:
            m = from_projective(f)
        except NotMonomial as exc:
            return NEGATIVE, [f"not monomial: {exc}"], {"result": "not-monomial",
                                                         "reason": str(exc)}
    return _cert_result(certify_monomial(m))


def cmd_verify_word(args, F):
    w = _load_word(args.word)
    f = eval_word(w, F)
    if not (args.map or args.maps):
        return OK, [str(f)], {"map": f.to_json()}
    target = _load_map(_map_arg(args), F)
    ok = equal_up_to_scalar(f, target)
    return (OK if ok else NEGATIVE), ["equal" if ok else "different"], {
        "result": ok, "evaluated": f.to_json()}


def cmd_builtin(args, F):
    name = args.name or (args.maps[0] if args.maps else None)
    if not name:
        raise UsageError("builtin needs --name")
    n = args.n if args.n is not None else 3
    f, w = builtin(name, n, _parse_params(args.params))
    obj = {"name": name, "map": f.to_json(), "word": w.to_json() if w else None}
    lines = [str(f), f"word: {'none' if w is None else str(w.length()) + ' letters'}"]
    if args.check and w is not None:
        ok = verify(w, f)
        obj["verified"] = ok
        lines.append(f"verified {ok}")
        if not ok:
            return NEGATIVE, lines, obj
    return OK, lines, obj


def cmd_embed(args, F):
    g = linear_embed(_load_map(_map_arg(args), F))
    return OK, [str(g)], g.to_json()


def cmd_f2_index(args, F):
    if args.n is None:
        raise UsageError("f2-index needs --n")
    if not 2 <= args.n <= 12:
        raise UsageError("--n must be between 2 and 12")
    k = f2_orbit_index(args.n)
    return OK, [str(k)], {"n": args.n, "index": k}


def cmd_selftest(args, F):
    only = [s.strip() for s in args.only.split(",")] if args.only else None
    stream = args.stream if args.output == "text" else None
    try:
        results = acceptance.run(only, out=stream)
    except KeyError as exc:
        raise UsageError(str(exc.args[0]))
    failed = [r[0] for r in results if not r[1]]
    obj = {"results": [{"name": n, "pass": ok, "detail": d, "seconds": round(t, 3)}
                       for n, ok, d, t in results], "failed": failed}
    lines = [f"{len(results) - len(failed)}/{len(results)} criteria passed"]
    return (NEGATIVE if failed else OK), lines, obj


COMMANDS = {
    "compose": (cmd_compose, "compose maps (the last one acts first)"),
    "degree": (cmd_degree, "degree of a map"),
    "jacobian": (cmd_jacobian, "Jacobian determinant of a map"),
    "affine-jacobian": (cmd_affine_jacobian, "Jacobian of the map on the chart x0 = 1"),
    "square-test": (cmd_square_test, "is the Jacobian a constant times a k-th power"),
    "discrepancy": (cmd_discrepancy, "multiplicity of a hypersurface in the Jacobian"),
    "contracted": (cmd_contracted, "squarefree decomposition of the Jacobian"),
    "obstruction": (cmd_obstruction, "Jacobian parity obstruction to membership in G_n"),
    "monomial-check": (cmd_monomial_check, "recognize a monomial map"),
    "monomial-decompose": (cmd_monomial_decompose, "factor a unimodular matrix"),
    "certify": (cmd_certify, "certificate of membership in G_n, or an obstruction"),
    "verify-word": (cmd_verify_word, "evaluate a generator word, optionally against a map"),
    "builtin": (cmd_builtin, "a named map and its generator word"),
    "embed": (cmd_embed, "linear embedding of a map of P^n into P^(n+1)"),
    "f2-index": (cmd_f2_index, "index of GL(n,Z)_odd in GL(n,Z)"),
    "selftest": (cmd_selftest, "run the acceptance suite"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cremona", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("maps", nargs="*", help="maps as text, JSON or file paths")
        p.add_argument("--map", action="append", help="a map (repeatable)")
        p.add_argument("--n", type=int, help="dimension of the projective space")
        p.add_argument("--field", default="rationals",
                       help="rationals (default) or fp:P for a prime P")
        p.add_argument("--output", choices=("text", "json"), default="text")
        p.add_argument("--matrix", help="integer matrix as [[...],...] or a file")
        p.add_argument("--word", help="generator word as JSON or a file")
        p.add_argument("--name", help="builtin name")
        p.add_argument("--params", help="builtin parameters as JSON or key=value,...")
        p.add_argument("--only", help="comma separated criteria for selftest")
        if name == "square-test":
            p.add_argument("--k", type=int, default=2, help="power to test (default 2)")
        if name == "discrepancy":
            p.add_argument("--poly", help="equation of the hypersurface")
        if name == "monomial-decompose":
            p.add_argument("--full", action="store_true",
                           help="always use transvections, signs and permutations")
        if name == "certify":
            p.add_argument("--coeffs", help="torus coefficients, comma separated")
            p.add_argument("--shear", help="exponents v2..vn of the shear x1 + c*x2^v2...")
            p.add_argument("--coeff", default="1", help="the constant c of the shear")
        if name == "builtin":
            p.add_argument("--check", action="store_true",
                           help="also evaluate the word against the closed form")
    return parser


def _emit(args, status, lines, obj, out):
    if args.output == "json":
        if isinstance(obj, dict):
            obj = {"status": status, **obj}
        print(json.dumps(obj, indent=2), file=out)
    else:
        for line in lines:
            print(line, file=out)


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.stream = out
    fn = COMMANDS[args.command][0]
    try:
        F = parse_field(args.field)
        status, lines, obj = fn(args, F)
    except (DegreeBoundExceeded, UnsupportedCharacteristic) as exc:
        print(f"refused: {exc}", file=err)
        return GUARDRAIL
    except (UsageError, ParseError, FieldError, MapError, UnknownBuiltin, NotUnimodular,
            NotDivisible, ValueError, KeyError, json.JSONDecodeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=err)
        return USAGE
    except CertificationError as exc:  # never expected; reported rather than hidden
        print(f"internal error: {exc}", file=err)
        return GUARDRAIL
    _emit(args, status, lines, obj, out)
    return status


if __name__ == "__main__":
    sys.exit(main())
