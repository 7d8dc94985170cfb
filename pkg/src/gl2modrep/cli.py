"""Command-line surface: decomposition, identity sweeps, operator analysis,
Hom-space dimensions, shift planning, shift tables, character tables.

Exit codes: 0 success, 1 domain rejection or failed verification, 2 usage
error.  Output is deterministic; JSON mode emits canonically sorted objects
so identical inputs produce identical bytes.

Term grammar (--term): an integer combination of products
    [coeff *] e^m * Mk[i] * Mk[i] ...
joined by + or -, whitespace-insensitive; k may be negative, [i] defaults
to [0], and a bare integer term is a multiple of the trivial module.
Example: "2*e^1*M3[0]*M4[1] - M2[0]".
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import brauer, modrep, shift
from .field import PrimePower, build_field
from .k0 import (ProductTerm, VirtualRep, format_text, normalize_products,
                 verify_identity)

_TOKEN = re.compile(r"\s*(?:(?P<sign>[+-])|(?P<num>\d+)|(?P<e>e(?:\^(?P<em>-?\d+))?)"
                    r"|(?P<M>M(?P<mk>-?\d+)(?:\[(?P<mi>-?\d+)\])?)|(?P<star>\*))")


class TermSyntaxError(ValueError):
    pass


def parse_terms(expr: str) -> list[ProductTerm]:
    """Parse the term grammar into a list of product terms."""
    pos = 0
    terms = []
    sign = 1
    coeff = None
    m = 0
    factors: list[tuple[int, int]] = []
    started = False

    def flush():
        nonlocal sign, coeff, m, factors, started
        if not started:
            raise TermSyntaxError(f"empty term in {expr!r}")
        terms.append(ProductTerm(sign * (1 if coeff is None else coeff), m, tuple(factors)))
        sign, coeff, m, factors, started = 1, None, 0, [], False

    expect_factor = False
    while pos < len(expr):
        t = _TOKEN.match(expr, pos)
        if not t or t.end() == pos:
            raise TermSyntaxError(f"cannot parse {expr!r} at position {pos}")
        pos = t.end()
        if t.group("sign"):
            if started and not expect_factor:
                flush()
                sign = -1 if t.group("sign") == "-" else 1
            elif not started:
                sign *= -1 if t.group("sign") == "-" else 1
            else:
                raise TermSyntaxError(f"misplaced sign in {expr!r}")
        elif t.group("num"):
            if started and coeff is None and not factors and not expect_factor:
                raise TermSyntaxError(f"misplaced integer in {expr!r}")
            coeff = int(t.group("num")) if coeff is None else coeff * int(t.group("num"))
            started = True
            expect_factor = False
        elif t.group("e"):
            m += int(t.group("em")) if t.group("em") is not None else 1
            started = True
            expect_factor = False
        elif t.group("M"):
            tw = int(t.group("mi")) if t.group("mi") is not None else 0
            factors.append((int(t.group("mk")), tw))
            started = True
            expect_factor = False
        elif t.group("star"):
            if not started:
                raise TermSyntaxError(f"misplaced '*' in {expr!r}")
            expect_factor = True
    tail = expr[pos:].strip()
    if tail:
        raise TermSyntaxError(f"trailing input {tail!r}")
    if expect_factor:
        raise TermSyntaxError(f"dangling '*' in {expr!r}")
    flush()
    return terms


def parse_range(spec: str) -> list[int]:
    """'a..b' inclusive, or a single integer."""
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise ValueError(f"empty range {spec!r}")
        return list(range(lo, hi + 1))
    return [int(spec)]


def _emit(args, obj, text: str) -> None:
    if args.format == "json":
        out = json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
    else:
        out = text if text.endswith("\n") else text + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _int_list(s: str) -> list[int]:
    return [int(x) for x in s.split(",") if x.strip() != ""]


# ---------------------------------------------------------------------------


def cmd_decompose(args) -> int:
    pp = PrimePower(args.p, args.g)
    terms = parse_terms(args.term)
    for t in terms:
        for _, tw in t.factors:
            if not (0 <= tw):
                raise ValueError(f"negative twist in {args.term!r}")
    v = normalize_products(pp, terms)
    _emit(args, v.to_json_obj(), format_text(v))
    return 0


def cmd_verify(args) -> int:
    pp = PrimePower(args.p, args.g)
    checks = ("normalize",) if args.skip_char else ("normalize", "char")
    grid: list[dict] = [{}]

    def extend(name, values):
        nonlocal grid
        grid = [dict(pt, **{name: v}) for pt in grid for v in values]

    ident = args.identity
    if ident in ("delta", "sigma", "phi"):
        extend("k", parse_range(args.k))
    elif ident == "pi":
        extend("n", parse_range(args.n))
        extend("m", parse_range(args.m))
    elif ident in ("phiprime", "phitw"):
        extend("k", parse_range(args.k))
        extend("h", parse_range(args.h))
        if ident == "phitw":
            extend("i", parse_range(args.i) if args.i else list(range(pp.g)))
    failures = []
    for pt in grid:
        if not verify_identity(pp, ident, check=checks, **pt):
            failures.append(pt)
    obj = {"identity": ident, "p": pp.p, "g": pp.g, "instances": len(grid),
           "checks": list(checks), "all_hold": not failures, "failures": failures}
    text = (f"{ident}: all {len(grid)} instances hold" if not failures
            else f"{ident}: {len(failures)} of {len(grid)} instances FAIL: {failures[:10]}")
    _emit(args, obj, text)
    return 0 if not failures else 1


_OPS = ("theta", "d", "dickson", "dclassical")


def cmd_operators(args) -> int:
    ctx = build_field(args.p, args.g)
    pp = ctx.ppow
    degrees = tuple(_int_list(args.degrees))
    if len(degrees) != pp.g:
        raise ValueError(f"need {pp.g} degrees, got {degrees}")
    which = _OPS if args.op == "all" else (args.op,)
    alphas = parse_range(args.alpha) if args.alpha else list(range(pp.g))
    betas = parse_range(args.beta) if args.beta else list(range(1, pp.g))
    reports = []
    for op in which:
        combos = ([(a, b) for a in alphas for b in betas] if op in ("theta", "d")
                  else [(a, None) for a in alphas])
        for a, b in combos:
            if op == "theta":
                lm = modrep.theta_op(pp, degrees, a, b)
            elif op == "d":
                lm = modrep.d_op(pp, degrees, a, b)
            elif op == "dickson":
                lm = modrep.dickson_op(pp, degrees, a)
            else:
                lm = modrep.d_classical_op(pp, degrees, a)
            rk = modrep.rank(ctx, lm)
            reports.append({
                "op": op, "alpha": a, "beta": b, "degrees": list(degrees),
                "dst_degrees": list(lm.dst.degrees), "det_twist": lm.det_twist,
                "src_dim": lm.src.dim, "dst_dim": lm.dst.dim, "rank": rk,
                "injective": rk == lm.src.dim,
                "coker_dim": lm.dst.dim - rk,
                "equivariant": modrep.check_equivariance(ctx, lm),
            })
    obj = {"p": pp.p, "g": pp.g, "degrees": list(degrees), "operators": reports}
    lines = [f"{r['op']}(alpha={r['alpha']}, beta={r['beta']}): "
             f"{tuple(r['degrees'])} -> {tuple(r['dst_degrees'])} "
             f"rank={r['rank']}/{r['src_dim']} coker={r['coker_dim']} "
             f"equivariant={r['equivariant']} injective={r['injective']}"
             for r in reports]
    _emit(args, obj, "\n".join(lines))
    return 0 if all(r["equivariant"] for r in reports) else 1


def cmd_homdim(args) -> int:
    ctx = build_field(args.p, args.g)
    pp = ctx.ppow
    src = modrep.ModuleSpec(pp, args.src_det, tuple(_int_list(args.src)))
    dst = modrep.ModuleSpec(pp, args.dst_det, tuple(_int_list(args.dst)))
    d = modrep.hom_space_dim(ctx, src, dst, args.det)
    obj = {"p": pp.p, "g": pp.g, "det": args.det,
           "src": {"m": src.m, "ks": list(src.degrees)},
           "dst": {"m": dst.m, "ks": list(dst.degrees)}, "dim": d}
    _emit(args, obj, f"hom dimension = {d}")
    return 0


def cmd_plan(args) -> int:
    if args.f2 is not None:
        mult = _int_list(args.f2)
        if len(mult) != 8:
            raise ValueError("--f2 needs 8 multiplicities n,m,r,s,t,u,v,z")
        k = _int_list(args.k)
        if len(k) != 2:
            raise ValueError("--f2 planning needs exactly two k entries")
        res = shift.plan_f2(args.p, k[0], k[1], args.w, *mult, alpha=args.alpha)
        obj = res.to_json_obj()
        text = (f"accepted via {res.condition}: target k={obj['target']['k']}, "
                f"w'={obj['target']['w']}" if res.accepted
                else f"rejected: {res.rejection}")
        _emit(args, obj, text)
        return 0 if res.accepted else 1
    fs = tuple(_int_list(args.f))
    kblocks = tuple(tuple(_int_list(b)) for b in args.k.split(";"))
    selblocks = tuple(tuple(x.strip() for x in b.split(",")) for b in args.choices.split(";"))
    ps = shift.PrimeSplit(args.p, fs)
    wp = shift.WeightParams(kblocks, args.w)
    res = shift.plan_general(ps, wp, shift.ShiftChoice(args.beta, selblocks))
    obj = res.to_json_obj()
    if isinstance(res, shift.ShiftPlan):
        text = (f"accepted via {res.condition}: target k="
                f"{[list(v) for v in res.target_k]}, w'={res.target_w}\n"
                + "\n".join(f"block {j + 1}: " + " o ".join(
                    s.name() for s in reversed(steps)) if steps else f"block {j + 1}: identity"
                    for j, steps in enumerate(res.recipe)))
        _emit(args, obj, text)
        return 0
    _emit(args, obj, f"rejected ({res.clause}): {res.detail}")
    return 1


def cmd_tables(args) -> int:
    th, d = shift.shift_vector_tables(args.g, args.p)
    if args.p is None:
        def render(v):
            return [shift.poly_in_p_str(e) for e in v]

        def jrender(v):
            return [{str(e): c for e, c in entry.items()} for entry in v]
    else:
        def render(v):
            return [str(e) for e in v]

        def jrender(v):
            return list(v)
    obj = {"g": args.g, "p": args.p,
           "theta": [{"name": n, "vector": jrender(v)} for n, v in th],
           "d": [{"name": n, "vector": jrender(v)} for n, v in d]}
    lines = ["multiplication-type shifts:"]
    lines += [f"  {n:<14} ({', '.join(render(v))})" for n, v in th]
    lines.append("derivation-type shifts:")
    lines += [f"  {n:<14} ({', '.join(render(v))})" for n, v in d]
    _emit(args, obj, "\n".join(lines))
    return 0


def cmd_chartable(args) -> int:
    pp = PrimePower(args.p, args.g)
    terms = parse_terms(args.term)
    classes = brauer.regular_classes(pp)
    rows = []
    for cls in classes:
        val = brauer.char_expr(pp, terms, cls)
        desc = {"kind": cls.kind, "a": cls.a}
        if cls.kind == "split":
            desc["b"] = cls.b
        rows.append({"class": desc, "value": list(val.coeffs)})
    obj = {"p": pp.p, "g": pp.g, "M": pp.M, "term": args.term, "classes": rows}
    lines = [f"{r['class']['kind']}({r['class']['a']}"
             + (f",{r['class']['b']}" if r['class'].get('b') is not None else "")
             + f") -> {r['value']}" for r in rows]
    _emit(args, obj, "\n".join(lines))
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gl2modrep",
        description="Exact decomposition, verification and weight-shift planning "
                    "for modular representations of GL2 over a finite field.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--out", default=None, help="write output to a file")

    sp = sub.add_parser("decompose", help="standard form of a term expression")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--term", required=True)
    common(sp)
    sp.set_defaults(fn=cmd_decompose)

    sp = sub.add_parser("verify", help="sweep an identity family over a grid")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--identity", choices=("delta", "sigma", "pi", "phi", "phiprime", "phitw"),
                    required=True)
    sp.add_argument("--k", default="0..0", help="range a..b or single value")
    sp.add_argument("--h", default="0..0")
    sp.add_argument("--n", default="0..0")
    sp.add_argument("--m", default="0..0")
    sp.add_argument("--i", default=None, help="twist range for phitw (default: all)")
    sp.add_argument("--skip-char", action="store_true",
                    help="check standard forms only, skip the character oracle")
    common(sp)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("operators", help="build and analyze intertwining operators")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--degrees", required=True, help="comma-separated k_0,..,k_{g-1}")
    sp.add_argument("--op", choices=_OPS + ("all",), default="all")
    sp.add_argument("--alpha", default=None, help="range a..b (default: all)")
    sp.add_argument("--beta", default=None, help="range a..b (default: all)")
    common(sp)
    sp.set_defaults(fn=cmd_operators)

    sp = sub.add_parser("homdim", help="dimension of an equivariant Hom space")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--src", required=True, help="source degrees k_0,..,k_{g-1}")
    sp.add_argument("--dst", required=True, help="target degrees")
    sp.add_argument("--det", type=int, default=0, help="extra det power on the source")
    sp.add_argument("--src-det", type=int, default=0)
    sp.add_argument("--dst-det", type=int, default=0)
    common(sp)
    sp.set_defaults(fn=cmd_homdim)

    sp = sub.add_parser("plan", help="holomorphic weight-shift planning")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--f", default="1", help="residue degrees, comma-separated")
    sp.add_argument("--k", required=True, help="k entries; blocks separated by ';'")
    sp.add_argument("--w", type=int, required=True)
    sp.add_argument("--beta", type=int, default=1)
    sp.add_argument("--choices", default="", help="theta/d per embedding; blocks by ';'")
    sp.add_argument("--f2", default=None,
                    help="two-embedding multiplicities n,m,r,s,t,u,v,z")
    sp.add_argument("--alpha", type=int, default=0, help="det-twist integer (f2 mode)")
    common(sp)
    sp.set_defaults(fn=cmd_plan)

    sp = sub.add_parser("tables", help="the 2g^2 weight-shift vector tables")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--p", type=int, default=None, help="evaluate at a numeric p")
    common(sp)
    sp.set_defaults(fn=cmd_tables)

    sp = sub.add_parser("chartable", help="character table of a term expression")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--term", required=True)
    common(sp)
    sp.set_defaults(fn=cmd_chartable)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
