"""Desk-scale verification suite (the ``verify`` subcommand).

Each check returns a ``CheckResult``; none of them raise on a failed
comparison, so a run always reports every item.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb

from .category import (amalgamated_category, intersect_bounded, predicate_category, universe_size)
from .errors import WreathError
from .extensions import (build_classical, check_classical_multiplication, direct_product_criterion,
                         exact_sequence_word_condition, find_splitting, verify_action)
from .groups import Subgroup, normal_closure, parse_group, quotient, whole_group
from .partition import (ColourSet, all_labelings, beta_upper, compose, enumerate_partitions, make_partition,
                        noncrossing_labelings)
from .reptheory import (RepLabel, build_table, canonical_word, equivalence_class, fuse, glued_semiring)
from .tensorops import hom_dimension, verify_composition


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _timed(name):
    def deco(fn):
        def run(*args, **kwargs):
            t = time.time()
            try:
                res = fn(*args, **kwargs)
            except WreathError as exc:
                res = CheckResult(name, False, f"error: {exc}")
            res.seconds = time.time() - t
            return res
        run.__name__ = fn.__name__
        run.check_name = name
        return run
    return deco


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def crossing_bruteforce(labels) -> bool:
    """Some ``a < b < c < d`` with ``a, c`` in one block and ``b, d`` in another."""
    k = len(labels)
    for a, b, c, d in combinations(range(k), 4):
        if labels[a] == labels[c] and labels[b] == labels[d] and labels[a] != labels[b]:
            return True
    return False


# ---------------------------------------------------------------------------

@_timed("catalan")
def check_catalan(max_points: int = 8) -> CheckResult:
    counts = {}
    ok = True
    for n in range(max_points + 1):
        brute = sum(1 for lab in all_labelings(n) if not crossing_bruteforce(lab))
        direct = sum(1 for _ in noncrossing_labelings(n))
        counts[n] = brute
        ok &= brute == direct == catalan(n)
    cs = ColourSet.uncoloured()
    g = cs.colours[0]
    for n in range(max_points + 1):
        ok &= len(enumerate_partitions(cs, [g] * (n // 2), [g] * (n - n // 2))) == catalan(n)
    return CheckResult("catalan", ok, f"NC counts {counts}", data={"counts": counts})


def random_partition(rng: random.Random, cs: ColourSet, n: int, m: int):
    g = cs.colours[0]
    lab = [0]
    for _ in range(n + m - 1):
        lab.append(rng.randint(0, max(lab) + 1))
    blocks = {}
    for x, b in enumerate(lab[: n + m]):
        blocks.setdefault(b, []).append(x)
    return make_partition(cs, [g] * n, [g] * m, list(blocks.values()) if n + m else [])


@_timed("loop rule")
def check_loop_rule(pairs: int = 200, seed: int = 0) -> CheckResult:
    rng = random.Random(seed)
    cs = ColourSet.uncoloured()
    bad, loops_seen = 0, 0
    for i in range(pairs):
        N = 2 if i % 2 == 0 else 3
        a, b, c = rng.randint(0, 3), rng.randint(1, 3), rng.randint(0, 3)
        q = random_partition(rng, cs, a, b)
        p = random_partition(rng, cs, b, c)
        loops_seen += compose(p, q).removed_loops > 0
        if not verify_composition(p, q, N):
            bad += 1
    return CheckResult("loop rule", bad == 0, f"{pairs} pairs, {bad} failures, {loops_seen} with loops")


@_timed("linear independence")
def check_linear_independence(N: int = 4, max_points: int = 8) -> CheckResult:
    cs = ColourSet.uncoloured()
    g = cs.colours[0]
    bad = []
    cases = 0
    for k in range(max_points + 1):
        for n in range(k + 1):
            parts = enumerate_partitions(cs, [g] * n, [g] * (k - n))
            cases += 1
            if hom_dimension(parts, N) != len(parts):
                bad.append((n, k - n))
    four = enumerate_partitions(cs, [], [g] * 4)
    r2 = hom_dimension(four, 2)
    ok = not bad and r2 < len(four)
    return CheckResult("linear independence", ok,
                       f"{cases} row shapes full rank at N={N}: {not bad}; N=2 rank on 4 points {r2} < {len(four)}")


def z4_setup():
    G = parse_group("abelian:4")
    cs = ColourSet(G, [(1,), (3,)])
    L = Subgroup(G, [(2,)])
    return G, cs, L


@_timed("topological generation")
def check_topological_generation(bound: int = 6) -> CheckResult:
    G, cs, L = z4_setup()
    amal = amalgamated_category(cs, L, [[(1,), (1,)]], bound=bound)
    full = amalgamated_category(cs, whole_group(G), [[(1,)], [(1,), (1,)], [(1,), (3,)]], bound=bound)
    Q, proj = quotient(G, L)
    pred = predicate_category(cs, proj, Q)
    inter = intersect_bounded(full, pred, bound)
    closure = amal.close(bound)
    missing = inter - closure
    extra = closure - inter
    ok = not missing and not extra
    return CheckResult("topological generation", ok,
                       f"|C_GG ∩ C_quot| = {len(inter)}, |C_GL| = {len(closure)}, unresolved {len(missing)}, "
                       f"extra {len(extra)}")


@_timed("normal closure quotient")
def check_normal_closure_quotient(bound: int = 6) -> CheckResult:
    G = parse_group("perm:(1 2),(1 2 3)")
    a, b = G.parse_element("(1 2)"), G.parse_element("(2 3)")
    cs = ColourSet(G, [a, b])
    L = Subgroup(G, [a])
    closure_group = normal_closure(L)
    h = amalgamated_category(cs, L, [[a]], bound=bound, extra=[beta_upper(cs, [a])])
    Q, proj = quotient(G, closure_group)
    pred = predicate_category(cs, proj, Q)
    got = h.close(bound)
    want = pred.items(bound)
    ok = got == want and len(want) == universe_size(2, bound) and closure_group.order() == 6
    return CheckResult("normal closure quotient", ok,
                       f"normal closure order {closure_group.order()}, closure {len(got)} items, "
                       f"quotient predicate {len(want)} items")


_TABLES: dict = {}


def cached_table(name: str, bound: int, max_word_len: int):
    key = (name, bound, max_word_len)
    if key not in _TABLES:
        G = parse_group(name)
        k = G.torsion[0]
        cs = ColourSet(G, [(1,), (k - 1,)])
        L = Subgroup(G, [(2,)])
        _TABLES[key] = (G, cs, L, build_table(cs, L, 4, bound, max_word_len))
    return _TABLES[key]


@_timed("one-dimensional sector")
def check_onedim_sector() -> CheckResult:
    details = []
    ok = True
    for name in ("abelian:4", "abelian:6"):
        G, cs, L, table = cached_table(name, 6, 2)
        od = [lab for lab in table.labels if lab.kind == "onedim"]
        Lel = L.elements()
        ok &= sorted(lab.value for lab in od) == Lel
        for x in od:
            for y in od:
                d = fuse(table, x, y)
                ok &= dict(d) == {RepLabel.onedim(G.mul(x.value, y.value)): 1}
        details.append(f"{name}: {len(od)} one-dim labels, |Λ|={len(Lel)}")
    return CheckResult("one-dimensional sector", ok, "; ".join(details))


@_timed("one-dim fusion rule")
def check_onedim_fusion(bound: int = 8, max_word_len: int = 3) -> CheckResult:
    G, cs, L, table = cached_table("abelian:4", bound, max_word_len)
    checked, bad, lengths = 0, 0, set()
    for (a, b), d in table.tensor.items():
        if a.kind != "onedim" or b.kind != "higher":
            continue
        w = list(b.value)
        w[0] = G.mul(a.value, w[0])
        want = {RepLabel.higher(canonical_word(G, L, w)): 1}
        checked += 1
        lengths.add(len(w))
        bad += dict(d) != want
    untab = [b for b in table.labels if b.kind == "higher"
             and all((a, b) not in table.tensor for a in table.labels if a.kind == "onedim" and a.value != (0,))]
    ok = bad == 0 and checked > 0
    return CheckResult("one-dim fusion rule", ok,
                       f"{checked} products checked (word lengths {sorted(lengths)}), {bad} failures; "
                       f"{len(untab)} higher labels beyond the bound for non-trivial λ",
                       data={"untabulated": [u.format(G) for u in untab]})


@_timed("glued product")
def check_glued(bound: int = 8, max_word_len: int = 3) -> CheckResult:
    G, cs, L, table = cached_table("abelian:4", bound, max_word_len)
    _, qtable, rep = glued_semiring(cs, L, 4, bound, max_word_len, table=table)
    Q = qtable.group
    cyclic_instance = getattr(Q, "torsion", None) == (2,)
    ok = rep.ok and cyclic_instance
    return CheckResult("glued product", ok,
                       f"quotient {Q}, {rep.n_labels} labels vs {rep.n_glued_labels} glued, "
                       f"{rep.n_products} products, bijection {rep.bijection}, tensor {rep.tensor_match}"
                       + (f", problems {rep.problems[:3]}" if rep.problems else ""))


@_timed("classical model")
def check_classical() -> CheckResult:
    m = build_classical(4, 2, 3)
    mult = check_classical_multiplication(m, 100)
    dk = build_classical(3, 3, 3)
    d1 = build_classical(2, 1, 2)
    ok = m.order == 96 == m.formula_order and mult and dk.order == 3 * 6 and d1.order == 2 ** 2 * 2
    return CheckResult("classical model", ok,
                       f"|Z4 wr_Z2 S3| = {m.order}, multiplication {mult}, d=k order {dk.order}, d=1 order {d1.order}")


def _normal_bruteforce(G, L) -> bool:
    Lel = set(L.elements())
    return all(G.conj(g, x) in Lel for g in G.elements() for x in Lel)


@_timed("exact sequence suite")
def check_extension_suite() -> CheckResult:
    S3 = parse_group("perm:(1 2),(1 2 3)")
    Z4, Z6 = parse_group("abelian:4"), parse_group("abelian:6")
    el = S3.parse_element
    pairs = {
        "S3,A3": (S3, Subgroup(S3, [el("(1 2 3)")])),
        "S3,<(1 2)>": (S3, Subgroup(S3, [el("(1 2)")])),
        "S3,<(1 3)>": (S3, Subgroup(S3, [el("(1 3)")])),
        "S3,S3": (S3, whole_group(S3)),
        "Z4,<2>": (Z4, Subgroup(Z4, [(2,)])),
        "Z6,<2>": (Z6, Subgroup(Z6, [(2,)])),
    }
    ok = True
    notes = []
    for name, (G, L) in pairs.items():
        cond, _ = exact_sequence_word_condition(G, L)
        ok &= cond == _normal_bruteforce(G, L)
    expected = {"S3,A3": (True, False), "Z6,<2>": (True, True), "Z4,<2>": (False, False)}
    for name, (split_want, prod_want) in expected.items():
        G, L = pairs[name]
        rho = find_splitting(G, L)
        dp = direct_product_criterion(G, L)
        ok &= (rho is not None) == split_want and dp.decomposable == prod_want
        # independent exhaustive search for a commuting complement
        Lel = L.elements()
        brute = False
        for gens in product(G.elements(), repeat=2):
            H = Subgroup(G, list(gens)).elements()
            if (len(H) * len(Lel) == len(G.elements()) and set(H) & set(Lel) == {G.identity()}
                    and all(G.mul(h, l) == G.mul(l, h) for h in H for l in Lel)):
                brute = True
                break
        ok &= brute == prod_want
        if rho is not None:
            ok &= verify_action(G, L, rho)
            Q = rho.quotient
            ok &= all(rho.projection(rho(q)) == q for q in Q.elements())
        notes.append(f"{name}: split {rho is not None}, product {dp.decomposable}")
    return CheckResult("exact sequence suite", ok, "; ".join(notes))


@_timed("word monoid")
def check_word_monoid(max_len: int = 3) -> CheckResult:
    ok = True
    notes = []
    for name in ("abelian:6", "abelian:4"):
        G = parse_group(name)
        L = Subgroup(G, [(2,)])
        classes = 0
        for n in range(1, max_len + 1):
            seen = set()
            for w in product(G.elements(), repeat=n):
                if w in seen:
                    continue
                cls = equivalence_class(G, L, w)
                seen |= cls
                classes += 1
                canon = {canonical_word(G, L, x) for x in cls}
                ok &= len(canon) == 1 and canonical_word(G, L, w) in cls
            # fibres of the canonical form are exactly the classes
            fibres = {}
            for w in product(G.elements(), repeat=n):
                fibres.setdefault(canonical_word(G, L, w), set()).add(w)
            ok &= all(equivalence_class(G, L, next(iter(f))) == f for f in fibres.values())
        notes.append(f"{name}: {classes} classes")
    return CheckResult("word monoid", ok, "; ".join(notes))


ALL_CHECKS = {
    "catalan": check_catalan,
    "loops": check_loop_rule,
    "independence": check_linear_independence,
    "generation": check_topological_generation,
    "normal-closure": check_normal_closure_quotient,
    "onedim": check_onedim_sector,
    "onedim-fusion": check_onedim_fusion,
    "glued": check_glued,
    "classical": check_classical,
    "extensions": check_extension_suite,
    "words": check_word_monoid,
}


def run_all() -> list[CheckResult]:
    return [fn() for fn in ALL_CHECKS.values()]
