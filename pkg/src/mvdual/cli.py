"""Command-line front end.  Every subcommand is a thin wrapper over one library call.

Exit status: 0 success, 1 domain error, 2 malformed input.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

import jsonschema

from . import formats as fm
from .duality import IllDefinedHom, check_hom, dual_zmap, in_ideal, radical_equal, variety
from .finite import (
    FiniteMVAlgebra,
    algebra_of_spectrum,
    chain,
    coproduct_spectrum,
    product,
    spectrum,
    split_bimorphism,
    tensor_relation_failures,
    tensor_spectrum,
)
from .geometry import Polyhedron, poly_equal
from .mcnaughton import compile_term, factor, one_set, pl_equal, verify_factorization
from .sampling import falsify
from .tangents import (
    check_outgoing_tangent,
    entry_threshold,
    extract_tangent,
    outgoing_conditions,
    tangent_condition_2,
)
from .terms import Presentation, TermSyntaxError, evaluate, min_arity, parse_term, size, to_text, variables


class InputError(Exception):
    """Bad command-line payload; maps to exit status 2."""


# -- input helpers -----------------------------------------------------------

def load_payload(text: str):
    """Inline JSON, or a path to a JSON file."""
    s = text.lstrip()
    if s.startswith(("{", "[")):
        src, where = text, "inline payload"
    elif os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            src, where = fh.read(), text
    else:
        raise InputError(f"{text!r} is neither inline JSON nor a readable file")
    try:
        return json.loads(src)
    except json.JSONDecodeError as e:
        raise InputError(f"{where}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None


def parse_relation(text: str) -> tuple[str, str]:
    parts = text.split("=")
    if len(parts) != 2:
        raise InputError(f"relation {text!r} must have the form s=t")
    return parts[0].strip(), parts[1].strip()


def parse_point(text: str) -> tuple:
    if text.lstrip().startswith("["):
        doc = load_payload(text)
        jsonschema.validate(doc, fm.SCHEMAS["tangent"]["properties"]["base"])
        return fm.unpt(doc)
    try:
        return tuple(Fraction(x) for x in text.split(",")) if text.strip() else ()
    except ValueError:
        raise InputError(f"bad point {text!r}; use comma separated rationals like 1/2,0") from None


def _presentation(args) -> Presentation:
    if args.presentation is not None:
        return fm.presentation_from_json(load_payload(args.presentation))
    if args.arity is None:
        raise InputError("give --arity with --rel, or --presentation")
    return Presentation.parse(args.arity, [parse_relation(r) for r in args.rel or []])


class _AlgebraAction(argparse.Action):
    # keeps --chain and --algebra in one ordered list
    def __call__(self, parser, namespace, values, option_string=None):
        items = list(getattr(namespace, self.dest) or [])
        items.append((self.const, values))
        setattr(namespace, self.dest, items)


def _algebras(args) -> list[FiniteMVAlgebra]:
    out = []
    for kind, v in args.algebras or []:
        if kind == "chain":
            try:
                out.append(chain(int(v)))
            except ValueError as e:
                raise InputError(f"--chain: {e}") from None
        else:
            out.append(fm.algebra_from_json(load_payload(v)))
    return out


def _add_algebra_opts(p):
    p.add_argument("--chain", dest="algebras", action=_AlgebraAction, const="chain", metavar="N",
                   help="Lukasiewicz chain with N+1 elements")
    p.add_argument("--algebra", dest="algebras", action=_AlgebraAction, const="json", metavar="JSON",
                   help="finite algebra payload")


def _two_algebras(args):
    algs = _algebras(args)
    if len(algs) != 2:
        raise InputError(f"need exactly two algebras, got {len(algs)}")
    return algs


def _term(text: str):
    return parse_term(text)


def _arity(args, *terms) -> int:
    need = max([min_arity(t) for t in terms] + [0])
    if args.arity is None:
        return need
    if args.arity < need:
        raise InputError(f"--arity {args.arity} is smaller than the {need} variables used")
    return args.arity


# -- commands ----------------------------------------------------------------

def cmd_parse(args):
    t = _term(args.term)
    return {"term": to_text(t), "core": to_text(t, sugar=False), "variables": sorted(variables(t)),
            "size": size(t)}


def cmd_eval(args):
    t = _term(args.term)
    return {"value": fm.rat(evaluate(t, parse_point(args.point)))}


def cmd_compile(args):
    t = _term(args.term)
    return fm.plfunction_to_json(compile_term(t, _arity(args, t)))


def cmd_pl_equal(args):
    f = fm.plfunction_from_json(load_payload(args.f))
    g = fm.plfunction_from_json(load_payload(args.g))
    return {"equal": pl_equal(f, g)}


def cmd_taut(args):
    t = _term(args.term)
    n = _arity(args, t)
    ok = poly_equal(one_set(compile_term(t, n)), Polyhedron.cube(n))
    return {"tautology": ok, "verdict": "TAUTOLOGY" if ok else "NOT A TAUTOLOGY"}


def cmd_equiv(args):
    s, t = _term(args.s), _term(args.t)
    n = _arity(args, s, t)
    return {"equivalent": pl_equal(compile_term(s, n), compile_term(t, n))}


def cmd_variety(args):
    return fm.polyhedron_to_json(variety(_presentation(args)))


def cmd_in_ideal(args):
    P = fm.polyhedron_from_json(load_payload(args.poly))
    s, t = (parse_term(x) for x in parse_relation(args.rel))
    return {"in_ideal": in_ideal(P, s, t)}


def cmd_rad_eq(args):
    S = fm.presentation_from_json(load_payload(args.S))
    T = fm.presentation_from_json(load_payload(args.T))
    return {"radical_equal": radical_equal(S, T)}


def cmd_check_hom(args):
    return {"well_defined": check_hom(fm.homspec_from_json(load_payload(args.hom)))}


def cmd_dual_hom(args):
    return fm.zmap_to_json(dual_zmap(fm.homspec_from_json(load_payload(args.hom))))


def cmd_factor(args):
    eta = fm.zmap_from_json(load_payload(args.zmap))
    comps = list(range(eta.target_dim)) if args.components is None else args.components
    if any(not 0 <= j < eta.target_dim for j in comps):
        raise ValueError(f"component index outside 0..{eta.target_dim - 1}")
    idx, xi = factor(eta, comps)
    return {"coordinates": idx, "xi": fm.zmap_to_json(xi),
            "commutes": verify_factorization(eta, comps, idx, xi)}


def cmd_spectrum(args):
    algs = _algebras(args)
    if not algs:
        raise InputError("give at least one --chain or --algebra")
    A = algs[0]
    for B in algs[1:]:
        A = product(A, B)
    return fm.spectrum_to_json(spectrum(A))


def cmd_coproduct_spectrum(args):
    return fm.spectrum_to_json(coproduct_spectrum(*_two_algebras(args)))


def cmd_tensor_spectrum(args):
    return fm.spectrum_to_json(tensor_spectrum(*_two_algebras(args)))


def cmd_algebra_of_spectrum(args):
    return fm.algebra_to_json(algebra_of_spectrum(fm.spectrum_from_json(load_payload(args.spectrum))))


def cmd_tensor_relations_check(args):
    A, B = _two_algebras(args)
    doc = load_payload(args.point)
    jsonschema.validate(doc, fm.SCHEMAS["spectrum"]["properties"]["points"]["items"])
    pt = fm.unpt(doc)
    fails = tensor_relation_failures(A, B, pt)
    split = split_bimorphism(A, B, pt)
    return {"satisfied": not fails, "failures": fails,
            "factors": None if split is None else [fm.pt(split[0]), fm.pt(split[1])]}


def cmd_tangent_extract(args):
    g = fm.germ_from_json(load_payload(args.germ))
    u = extract_tangent(g, args.k)
    doc = fm.tangent_to_json(u)
    doc["rays"] = [list(r) for r in u.rays()]
    doc["condition_2"] = tangent_condition_2(g, u)
    return doc


def cmd_germ_in_poly(args):
    P = fm.polyhedron_from_json(load_payload(args.poly))
    g = fm.germ_from_json(load_payload(args.germ))
    th = entry_threshold(P, g)
    return {"eventually_in": th is not None, "threshold": th}


def cmd_outgoing_verify(args):
    P = fm.polyhedron_from_json(load_payload(args.poly))
    u = fm.tangent_from_json(load_payload(args.tangent))
    w = fm.witness_from_json(load_payload(args.witness))
    c = outgoing_conditions(P, u, w)
    return {"conditions": list(c), "outgoing": all(c)}


def cmd_outgoing_check(args):
    P = fm.polyhedron_from_json(load_payload(args.poly))
    g = fm.germ_from_json(load_payload(args.germ))
    w = fm.witness_from_json(load_payload(args.witness))
    return {"outgoing": check_outgoing_tangent(P, g, args.k, w)}


def cmd_poly_falsify(args):
    P = fm.polyhedron_from_json(load_payload(args.poly))
    if P.dim < 2:
        raise ValueError("falsification needs dimension at least 2")
    if P.is_empty():
        raise ValueError("the polyhedron is empty")
    tally = falsify(P, args.count, args.seed)
    tally["counterexamples"] = [
        {"germ": fm.germ_to_json(g), "k": k, "witness": fm.witness_to_json(w)}
        for g, k, w in tally["counterexamples"]]
    tally["seed"] = args.seed
    return tally


# -- output ------------------------------------------------------------------

_FRAC = re.compile(r'"(-?\d+/\d+)"')


def render(doc, fmt: str, approx: bool) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True)
    if isinstance(doc, dict) and "verdict" in doc:
        return doc["verdict"]
    lines = []
    items = doc.items() if isinstance(doc, dict) else [("result", doc)]
    for key, val in items:
        s = json.dumps(val, sort_keys=True)
        if approx:
            s = _FRAC.sub(lambda m: f'"{m.group(1)}"~{float(Fraction(m.group(1))):.6g}', s)
        lines.append(f"{key}: {s}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--approx", action="store_true", help="decimal annotations in text output")

    ap = argparse.ArgumentParser(prog="mvdual", description=__doc__.splitlines()[0], parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, helptext):
        p = sub.add_parser(name, help=helptext, parents=[common])
        p.set_defaults(func=fn)
        return p

    p = add("parse", cmd_parse, "parse a term and print its normal text form")
    p.add_argument("term")
    p = add("eval", cmd_eval, "evaluate a term at a rational point")
    p.add_argument("term")
    p.add_argument("--point", required=True, help="e.g. 1/2,0 or a JSON list")
    for name, fn, h in [("compile", cmd_compile, "McNaughton function of a term"),
                        ("taut", cmd_taut, "tautology check")]:
        p = add(name, fn, h)
        p.add_argument("term")
        p.add_argument("--arity", type=int)
    p = add("equiv", cmd_equiv, "semantic equivalence of two terms")
    p.add_argument("s")
    p.add_argument("t")
    p.add_argument("--arity", type=int)
    p = add("pl-equal", cmd_pl_equal, "equality of two McNaughton function payloads")
    p.add_argument("f")
    p.add_argument("g")

    p = add("variety", cmd_variety, "solution polyhedron of a presentation")
    p.add_argument("--arity", type=int)
    p.add_argument("--rel", action="append", help="relation s=t (repeatable)")
    p.add_argument("--presentation")
    p = add("in-ideal", cmd_in_ideal, "whether s=t holds on a polyhedron")
    p.add_argument("--poly", required=True)
    p.add_argument("--rel", required=True)
    p = add("rad-eq", cmd_rad_eq, "equal radicals (equal varieties)")
    p.add_argument("S")
    p.add_argument("T")
    for name, fn, h in [("check-hom", cmd_check_hom, "well-definedness of a homomorphism"),
                        ("dual-hom", cmd_dual_hom, "dual Z-map of a homomorphism")]:
        p = add(name, fn, h)
        p.add_argument("hom")
    p = add("factor", cmd_factor, "factor a Z-map through its used coordinates")
    p.add_argument("zmap")
    p.add_argument("--components", type=lambda s: [int(x) for x in s.split(",") if x], help="e.g. 0,2")

    for name, fn, h in [("spectrum", cmd_spectrum, "spectrum of a finite algebra (product of the inputs)"),
                        ("coproduct-spectrum", cmd_coproduct_spectrum, "coproduct spectrum of two algebras"),
                        ("tensor-spectrum", cmd_tensor_spectrum, "tensor spectrum of two algebras")]:
        _add_algebra_opts(add(name, fn, h))
    p = add("algebra-of-spectrum", cmd_algebra_of_spectrum, "algebra generated by the coordinates")
    p.add_argument("spectrum")
    p = add("tensor-relations-check", cmd_tensor_relations_check, "nine relation families at a point")
    _add_algebra_opts(p)
    p.add_argument("--point", required=True, help="JSON list indexed by A x B")

    p = add("tangent-extract", cmd_tangent_extract, "k-tangent traced by a germ")
    p.add_argument("germ")
    p.add_argument("--k", type=int, required=True)
    p = add("germ-in-poly", cmd_germ_in_poly, "eventual membership of a germ")
    p.add_argument("poly")
    p.add_argument("germ")
    p = add("outgoing-verify", cmd_outgoing_verify, "witness conditions for a tangent")
    p.add_argument("poly")
    p.add_argument("tangent")
    p.add_argument("witness")
    p = add("outgoing-check", cmd_outgoing_check, "full outgoing-tangent check along a germ")
    p.add_argument("poly")
    p.add_argument("germ")
    p.add_argument("witness")
    p.add_argument("--k", type=int, required=True)
    p = add("poly-falsify", cmd_poly_falsify, "sample witnesses against a polyhedron")
    p.add_argument("poly")
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = args.func(args)
    except (InputError, TermSyntaxError, jsonschema.ValidationError) as e:
        msg = e.message if isinstance(e, jsonschema.ValidationError) else str(e)
        if isinstance(e, jsonschema.ValidationError) and e.absolute_path:
            msg = f"at {'/'.join(map(str, e.absolute_path))}: {msg}"
        print(f"input error: {msg}", file=sys.stderr)
        return 2
    except (IllDefinedHom, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    text = render(doc, args.format, args.approx)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
