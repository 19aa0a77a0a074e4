"""Command-line interface.

Exit codes: 0 success, 1 a verification or structural check failed,
2 bad input, 3 a resource cap was hit. ``--format structured`` prints one
JSON document (sorted keys) per run.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .category import hom_set, predicate_category
from .errors import InputError, ResourceError, StructuralError, VerificationError
from .extensions import (MonomialMatrix, build_classical, monomial_member, check_classical_multiplication,
                         direct_product_criterion, exact_sequence_word_condition, find_splitting,
                         measuring_action, verify_action)
from .groups import (FGAbelian, Subgroup, is_normal, parse_elements, parse_group, quotient,
                     split_top_level, trivial_subgroup)
from .partition import (ColourSet, ascii_picture, colour_product_condition, compose,
                        enumerate_partitions, format_partition, involution, is_noncrossing,
                        parse_partition, rotate_down_left, rotate_down_right, rotate_up_left,
                        rotate_up_right, to_one_row)
from . import suite
from .reptheory import (RepLabel, build_table, canonical_word, dimension, fuse, glued_semiring, gram_dims,
                        amalgamated_engine)
from .tensorops import hom_dimension, tp_matrix

ROTATIONS = {
    "down-left": rotate_down_left,
    "up-left": rotate_up_left,
    "down-right": rotate_down_right,
    "up-right": rotate_up_right,
    "involution": involution,
}


# ---------------------------------------------------------------------------
# config helpers
# ---------------------------------------------------------------------------

def default_colours(G) -> list:
    """Z_k: {1, k-1}; other abelian groups: ± unit vectors; perm groups: generators and inverses."""
    e = G.identity()
    if isinstance(G, FGAbelian):
        out = []
        for i in range(G.ngens):
            unit = [0] * G.ngens
            unit[i] = 1
            u = G.normalize(unit)
            out += [u, G.inv(u)]
    else:
        out = []
        for g in G.generators:
            out += [g, G.inv(g)]
    uniq = []
    for c in out:
        if c != e and c not in uniq:
            uniq.append(c)
    return uniq


def colour_set(args) -> ColourSet:
    if getattr(args, "group", None) is None:
        return ColourSet.uncoloured()
    G = parse_group(args.group)
    if getattr(args, "colours", None):
        return ColourSet(G, parse_elements(G, args.colours))
    return ColourSet(G, default_colours(G))


def subgroup(cs: ColourSet, args) -> Subgroup:
    G = cs.group
    if getattr(args, "lambda_", None) is None:
        return trivial_subgroup(G)
    return Subgroup(G, parse_elements(G, args.lambda_))


def parse_word(cs: ColourSet, text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    tokens = split_top_level(text)
    if len(tokens) == 1:
        tokens = [t for t in split_top_level(text, " ") if t.strip()]
    return tuple(cs.parse(t) for t in tokens)


def read_partition(cs: ColourSet, text: str):
    if os.path.isfile(text):
        with open(text) as fh:
            text = fh.read().strip()
    return parse_partition(cs, text)


def parse_label(G, text: str) -> RepLabel:
    text = text.strip()
    for kind, ctor in (("OneDim", RepLabel.onedim), ("Higher", RepLabel.higher)):
        if text.startswith(kind + "(") and text.endswith(")"):
            body = text[len(kind) + 1:-1]
            if kind == "OneDim":
                return ctor(G.parse_element(body))
            return ctor(tuple(G.parse_element(t) for t in split_top_level(body, " ") if t.strip()))
    raise InputError(f"bad label {text!r}; expected OneDim(x) or Higher(g1 g2 ...)")


def category_handle(cs: ColourSet, L: Subgroup, kind: str, bound: int):
    G = cs.group
    if kind == "predicate":
        if not L.generators:
            return predicate_category(cs)
        if not is_normal(L):
            raise InputError("the quotient predicate category needs a normal subgroup")
        Q, proj = quotient(G, L)
        return predicate_category(cs, proj, Q)
    eng = amalgamated_engine(cs, L, 4, bound, 1)
    return eng.handle


def partition_record(p) -> dict:
    word, labels = to_one_row(p)
    return {
        "partition": format_partition(p),
        "one_row_word": [p.colours.format(c) for c in word],
        "one_row_labels": list(labels),
        "noncrossing": is_noncrossing(p),
    }


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_part(args) -> tuple[dict, int]:
    cs = colour_set(args)
    g = cs.colours[0]
    if args.action == "enumerate":
        if args.upper is not None or args.lower is not None:
            upper = parse_word(cs, args.upper or "")
            lower = parse_word(cs, args.lower or "")
        else:
            if args.points is None:
                raise InputError("give --points or --upper/--lower")
            upper, lower = (), (g,) * args.points
        parts = enumerate_partitions(cs, upper, lower, noncrossing_only=args.noncrossing, bound=args.max_points)
        return {"count": len(parts), "partitions": [format_partition(p) for p in parts]}, 0
    p = read_partition(cs, _need(args.partition, "--partition"))
    if args.action == "show":
        rec = partition_record(p)
        rec["picture"] = ascii_picture(p)
        return rec, 0
    if args.action == "check":
        G = cs.group
        rec = partition_record(p)
        rec["colour_condition"] = colour_product_condition(p)
        L = subgroup(cs, args)
        if L.generators and is_normal(L):
            Q, proj = quotient(G, L)
            rec["quotient_condition"] = colour_product_condition(p, proj, Q)
        return rec, 0
    if args.action == "compose":
        q = read_partition(cs, _need(args.top, "--top"))
        res = compose(p, q)
        return {"partition": format_partition(res.partition), "removed_loops": res.removed_loops}, 0
    if args.action == "rotate":
        return {"partition": format_partition(ROTATIONS[args.direction](p))}, 0
    raise InputError(f"unknown action {args.action}")


def cmd_cat(args) -> tuple[dict, int]:
    cs = colour_set(args)
    L = subgroup(cs, args)
    h = category_handle(cs, L, args.category, args.bound)
    if args.action == "member":
        p = read_partition(cs, _need(args.partition, "--partition"))
        return {"partition": format_partition(p), "membership": h.membership(p, args.bound)}, 0
    if args.action == "close":
        items = h.items(args.bound)
        by_size: dict = {}
        for w, _ in items:
            by_size[len(w)] = by_size.get(len(w), 0) + 1
        return {"bound": args.bound, "total": len(items),
                "by_size": {str(k): by_size[k] for k in sorted(by_size)}}, 0
    if args.action == "hom":
        w = parse_word(cs, args.upper or "")
        v = parse_word(cs, args.lower or "")
        parts, complete = hom_set(h, w, v, args.bound)
        return {"count": len(parts), "complete": complete, "partitions": [format_partition(p) for p in parts]}, 0
    raise InputError(f"unknown action {args.action}")


def cmd_tp(args) -> tuple[dict, int]:
    cs = colour_set(args)
    p = read_partition(cs, args.partition)
    out: dict = {"partition": format_partition(p), "N": args.N}
    if args.print:
        T = tp_matrix(p, args.N, args.cap)
        out["shape"] = list(T.shape)
        out["matrix"] = T.tolist()
        out["grid"] = T.grid()
    if args.rank_with is not None:
        parts = [p] + [read_partition(cs, t) for t in args.rank_with]
        out["count"] = len(parts)
        out["rank"] = hom_dimension(parts, args.N, args.cap)
    if not args.print and args.rank_with is None:
        out["shape"] = [args.N ** p.n_lower, args.N ** p.n_upper]
        out["nonzero"] = args.N ** len(p.blocks)
    return out, 0


def _label_record(table, lab) -> dict:
    G = table.group
    return {"label": lab.format(G), "dim": table.dims[lab], "size": table.sizes[lab]}


def cmd_rep(args) -> tuple[dict, int]:
    cs = colour_set(args)
    L = subgroup(cs, args)
    G = cs.group
    fmt = G.format_element
    if args.action == "gram":
        eng = amalgamated_engine(cs, L, args.N, args.bound, args.max_word_len)
        if args.words:
            words = [parse_word(cs, w) for w in args.words.split(";")]
        else:
            words = []
            for n in range(1, args.max_word_len + 1):
                words += [w for w in _words(cs.colours, n)]
        M, exact = gram_dims(eng.handle, words, args.N)
        return {"words": [" ".join(fmt(x) for x in w) for w in words], "matrix": M, "exact": exact}, 0
    table = build_table(cs, L, args.N, args.bound, args.max_word_len, tabulate=args.action == "decompose")
    if args.action == "decompose":
        labels = [_label_record(table, lab) for lab in table.labels]
        products = {f"{a.format(G)} x {b.format(G)}": d.format(G) for (a, b), d in sorted(table.tensor.items())}
        return {"labels": labels, "products": products}, 0
    if args.action == "fuse":
        a = _tabulated(table, parse_label(G, _need(args.a, "--a")), cs, L)
        b = _tabulated(table, parse_label(G, _need(args.b, "--b")), cs, L)
        d = fuse(table, a, b)
        return {"a": a.format(G), "b": b.format(G), "product": d.format(G),
                "terms": {lab.format(G): m for lab, m in sorted(d.items())}}, 0
    if args.action == "dim":
        lab = _tabulated(table, parse_label(G, _need(args.label, "--label")), cs, L)
        return {"label": lab.format(G), "dim": dimension(table, lab)}, 0
    if args.action == "glued":
        return _glued(cs, L, args, table)
    raise InputError(f"unknown action {args.action}")


def _tabulated(table, lab: RepLabel, cs, L) -> RepLabel:
    if lab.kind == "higher":
        lab = RepLabel.higher(canonical_word(cs.group, L, lab.value))
    table.label_index(lab)
    return lab


def _glued(cs, L, args, table=None) -> tuple[dict, int]:
    _, qtable, rep = glued_semiring(cs, L, args.N, args.bound, args.max_word_len, table=table)
    out = {"ok": rep.ok, "bijection": rep.bijection, "tensor_match": rep.tensor_match,
           "dims_match": rep.dims_match, "labels": rep.n_labels, "glued_labels": rep.n_glued_labels,
           "products": rep.n_products, "quotient": str(qtable.group), "problems": [str(x) for x in rep.problems]}
    return out, 0 if rep.ok else 1


def _words(colours, n):
    if n == 0:
        yield ()
        return
    for w in _words(colours, n - 1):
        for c in colours:
            yield w + (c,)


def cmd_classical(args) -> tuple[dict, int]:
    if args.action == "order":
        m = build_classical(args.k, args.d, args.N)
        return {"k": args.k, "d": args.d, "N": args.N, "order": m.order, "formula": m.formula_order}, 0
    if args.action == "member":
        sigma = [int(x) - 1 for x in _need(args.sigma, "--sigma").split(",")]
        exps = [int(x) for x in _need(args.exponents, "--exponents").split(",")]
        M = MonomialMatrix(args.k, tuple(sigma), tuple(exps))
        return {"member": monomial_member(M, args.k, args.d), "matrix": M.dense()}, 0
    if args.action == "verify":
        m = build_classical(args.k, args.d, args.N)
        ok = check_classical_multiplication(m, args.pairs, args.seed) and m.order == m.formula_order
        return {"order": m.order, "formula": m.formula_order, "multiplication": ok}, 0 if ok else 1
    raise InputError(f"unknown action {args.action}")


def cmd_ext(args) -> tuple[dict, int]:
    G = parse_group(args.group)
    L = Subgroup(G, parse_elements(G, args.lambda_)) if args.lambda_ else trivial_subgroup(G)
    fmt = G.format_element
    normal = is_normal(L)
    cond, _ = exact_sequence_word_condition(G, L)
    out: dict = {"normal": normal, "word_condition": cond}
    if args.action == "criterion":
        dp = direct_product_criterion(G, L)
        out.update({"decomposable": dp.decomposable,
                    "gamma0": [fmt(x) for x in dp.gamma0] if dp.gamma0 else None,
                    "lambda0": [fmt(x) for x in dp.lambda0] if dp.lambda0 is not None else None,
                    "centralizer": [fmt(x) for x in dp.centralizer]})
        return out, 0
    rho = find_splitting(G, L)
    out["split"] = rho is not None
    if rho is None:
        return out, 0
    Q = rho.quotient
    out["section"] = {Q.format_element(q): fmt(v) for q, v in sorted(rho.table.items())}
    if args.action == "action":
        out["action"] = {f"{Q.format_element(q)}.{fmt(l)}": fmt(measuring_action(G, L, rho, q, l))
                         for q in Q.elements() for l in L.elements()}
        out["axioms"] = verify_action(G, L, rho)
        return out, 0 if out["axioms"] else 1
    return out, 0


def cmd_verify(args) -> tuple[dict, int]:
    if args.what == "glued":
        cs = colour_set(args)
        L = subgroup(cs, args)
        return _glued(cs, L, args)
    if args.what == "all":
        names = list(suite.ALL_CHECKS)
    else:
        names = [args.what]
    results = []
    for name in names:
        fn = suite.ALL_CHECKS[name]
        res = fn(seed=args.seed) if name == "loops" else fn()
        results.append(res)
        if args.format == "human":
            print(res.line(), flush=True)
    ok = all(r.passed for r in results)
    out = {"profile": args.profile, "passed": ok,
           "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]}
    return out, 0 if ok else 1


def _need(value, flag):
    if value is None:
        raise InputError(f"{flag} is required for this action")
    return value


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _group_flags(p, with_lambda=True):
    p.add_argument("--group", help="group spec, e.g. abelian:4 or 'perm:(1 2),(1 2 3)'")
    if with_lambda:
        p.add_argument("--lambda", dest="lambda_", help="subgroup generators (comma-separated literals)")
    p.add_argument("--colours", help="colour letters (comma-separated literals)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wreathcalc", description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=["human", "structured"], default="human")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("part", help="partition calculus")
    p.add_argument("action", choices=["enumerate", "show", "compose", "check", "rotate"])
    _group_flags(p)
    p.add_argument("--points", type=int)
    p.add_argument("--upper", help="upper colour word")
    p.add_argument("--lower", help="lower colour word")
    p.add_argument("--noncrossing", action="store_true", help="only non-crossing partitions")
    p.add_argument("--max-points", type=_positive, default=12)
    p.add_argument("--partition", help="partition literal or file")
    p.add_argument("--top", help="partition placed on top when composing")
    p.add_argument("--direction", choices=sorted(ROTATIONS), default="down-left")
    p.set_defaults(func=cmd_part)

    p = sub.add_parser("cat", help="partition categories")
    p.add_argument("action", choices=["member", "close", "hom"])
    _group_flags(p)
    p.add_argument("--category", choices=["predicate", "amalgamated"], default="predicate")
    p.add_argument("--bound", type=_positive, default=6)
    p.add_argument("--partition")
    p.add_argument("--upper")
    p.add_argument("--lower")
    p.set_defaults(func=cmd_cat)

    p = sub.add_parser("tp", help="linear maps of partitions")
    _group_flags(p, with_lambda=False)
    p.add_argument("--partition", required=True, help="partition literal or file")
    p.add_argument("--N", type=_positive, required=True)
    p.add_argument("--print", action="store_true", help="print the dense matrix")
    p.add_argument("--rank-with", nargs="*", help="further partitions; report the rank of the span")
    p.add_argument("--cap", type=_positive, default=10**7, help="entry cap N^points")
    p.set_defaults(func=cmd_tp)

    p = sub.add_parser("rep", help="representation semiring")
    p.add_argument("action", choices=["gram", "decompose", "fuse", "dim", "glued"])
    _group_flags(p)
    p.add_argument("--N", type=_positive, default=4)
    p.add_argument("--max-word-len", type=_positive, default=2)
    p.add_argument("--bound", type=_positive, default=6)
    p.add_argument("--words", help="';'-separated colour words for gram")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--label")
    p.set_defaults(func=cmd_rep)

    p = sub.add_parser("classical", help="monomial matrix model")
    p.add_argument("action", choices=["order", "member", "verify"])
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--N", type=_positive, required=True)
    p.add_argument("--sigma", help="permutation images, 1-based, comma-separated")
    p.add_argument("--exponents", help="column exponents, comma-separated")
    p.add_argument("--pairs", type=_positive, default=100)
    p.set_defaults(func=cmd_classical)

    p = sub.add_parser("ext", help="exact sequence data")
    p.add_argument("action", choices=["split", "criterion", "action"])
    p.add_argument("--group", required=True)
    p.add_argument("--lambda", dest="lambda_")
    p.set_defaults(func=cmd_ext)

    p = sub.add_parser("verify", help="verification suites")
    p.add_argument("what", choices=["all", "glued"] + list(suite.ALL_CHECKS))
    p.add_argument("--profile", choices=["desk"], default="desk")
    _group_flags(p)
    p.add_argument("--N", type=_positive, default=4)
    p.add_argument("--max-word-len", type=_positive, default=3)
    p.add_argument("--bound", type=_positive, default=8)
    p.set_defaults(func=cmd_verify)
    return ap


def _human(out: dict) -> str:
    lines = []
    for key in sorted(out):
        val = out[key]
        if key == "grid" or key == "picture":
            lines.append(f"{key}:\n{val}")
        elif isinstance(val, list) and val and isinstance(val[0], (str, dict)):
            lines.append(f"{key}:")
            lines += [f"  {json.dumps(v) if isinstance(v, dict) else v}" for v in val]
        elif isinstance(val, dict):
            lines.append(f"{key}:")
            lines += [f"  {k}: {v}" for k, v in val.items()]
        else:
            lines.append(f"{key}: {val}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    random.seed(args.seed)
    try:
        out, code = args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ResourceError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except (StructuralError, VerificationError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    if args.format == "structured":
        print(json.dumps(out, sort_keys=True))
    elif not (args.command == "verify" and args.what != "glued"):
        print(_human(out))
    else:
        print("all checks passed" if code == 0 else "some checks FAILED")
    return code


if __name__ == "__main__":
    sys.exit(main())
