"""Partition categories: decidable predicate categories and bounded closures.

Closures work on one-row forms. Every partition is determined, up to the
choice of how many points sit in the upper row, by its one-row word
``revinv(upper) + lower`` and block labels, and category membership does
not depend on that choice (rotations are invertible and change nothing
else). On one-row items the category operations become:

* cyclic shift of the word and labels (rotation);
* reverse the word and invert every colour (involution);
* concatenation (tensor product);
* contraction of ``x``'s last ``m`` points against ``y``'s first ``m``
  points in nested pairs (composition with a partition of ``m`` middle
  points, after rotating the glued points to the ends).

Items are pairs ``(word, labels)`` where ``word`` is a tuple of colour
indices into the ``ColourSet`` and ``labels`` is a restricted-growth string.
"""

from __future__ import annotations

import heapq
from typing import Callable, Iterable, Sequence

from .errors import InputError, ResourceError
from .groups import DiscreteGroup, Element, Subgroup
from .partition import (ColourSet, ColouredPartition, beta, enumerate_partitions, from_one_row,
                        noncrossing_labelings, rgs, to_one_row)

IN = "in"
OUT = "out"
NOT_IN_UP_TO_BOUND = "not-in-up-to-bound"

MAX_CLOSURE_BOUND = 14
DEFAULT_CACHE_CAP = 2_000_000

Item = tuple


# ---------------------------------------------------------------------------
# one-row item operations
# ---------------------------------------------------------------------------

def item_of(p: ColouredPartition) -> Item:
    word, labels = to_one_row(p)
    idx = p.colours.index
    return tuple(idx[c] for c in word), labels


def partition_of(cs: ColourSet, item: Item, n_upper: int = 0) -> ColouredPartition:
    word, labels = item
    return from_one_row(cs, [cs.colours[i] for i in word], labels, n_upper)


def rotate_item(item: Item, k: int = 1) -> Item:
    word, labels = item
    if not word:
        return item
    k %= len(word)
    return word[k:] + word[:k], rgs(labels[k:] + labels[:k])


def revinv_item(item: Item, inv_index: Sequence[int]) -> Item:
    word, labels = item
    return tuple(inv_index[c] for c in reversed(word)), rgs(labels[::-1])


def concat_item(x: Item, y: Item) -> Item:
    off = max(x[1], default=-1) + 1
    return x[0] + y[0], rgs(x[1] + tuple(l + off for l in y[1]))


def glue_item(x: Item, y: Item, m: int) -> Item:
    """Contract the last ``m`` points of ``x`` against the first ``m`` of ``y`` (nested)."""
    wx, lx = x
    wy, ly = y
    off = max(lx, default=-1) + 1
    parent = list(range(off + max(ly, default=-1) + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a
    nx = len(wx)
    for i in range(m):
        a, b = find(lx[nx - 1 - i]), find(ly[i] + off)
        if a != b:
            parent[b] = a
    labels = [find(l) for l in lx[:nx - m]] + [find(l + off) for l in ly[m:]]
    return wx[:nx - m] + wy[m:], rgs(labels)


def contract_adjacent(item: Item, i: int) -> Item:
    """Join points ``i`` and ``i+1`` (cyclically) and remove them."""
    word, labels = item
    k = len(word)
    j = (i + 1) % k
    a, b = labels[i], labels[j]
    lab = [a if l == b else l for l in labels]
    keep = [t for t in range(k) if t not in (i, j)]
    return tuple(word[t] for t in keep), rgs([lab[t] for t in keep])


def item_noncrossing(item: Item) -> bool:
    from .partition import blocks_noncrossing
    blocks: dict[int, list[int]] = {}
    for pos, l in enumerate(item[1]):
        blocks.setdefault(l, []).append(pos)
    return blocks_noncrossing(list(blocks.values()))


def noncrossing_universe(ncolours: int, bound: int) -> Iterable[Item]:
    """Every non-crossing one-row item with at most ``bound`` points."""
    from itertools import product
    for k in range(bound + 1):
        labs = list(noncrossing_labelings(k))
        for word in product(range(ncolours), repeat=k):
            for lab in labs:
                yield word, lab


def universe_size(ncolours: int, bound: int) -> int:
    from math import comb
    return sum(ncolours ** k * comb(2 * k, k) // (k + 1) for k in range(bound + 1))


# ---------------------------------------------------------------------------
# handles
# ---------------------------------------------------------------------------

class CategoryHandle:
    colours: ColourSet

    def member_item(self, item: Item, bound: int | None = None) -> str:
        raise NotImplementedError

    def membership(self, p: ColouredPartition, bound: int | None = None) -> str:
        if p.colours != self.colours:
            raise InputError("partition uses a different colour set")
        return self.member_item(item_of(p), bound)

    def contains(self, p: ColouredPartition, bound: int | None = None) -> bool:
        return self.membership(p, bound) == IN

    def items(self, bound: int) -> frozenset:
        """All member one-row items with at most ``bound`` points."""
        raise NotImplementedError

    def labelings_for_word(self, word: tuple) -> list:
        """Block labelings of the member items with one-row word ``word`` (colour indices)."""
        raise NotImplementedError


class PredicateCategory(CategoryHandle):
    """Non-crossing partitions whose blocks have equal upper and lower colour products.

    With ``projection`` the products are compared in the target group
    ``target``: this is the predicate category of the image colours, pulled
    back to the original colour letters.
    """

    kind = "predicate"

    def __init__(self, cs: ColourSet, projection: Callable | None = None, target: DiscreteGroup | None = None):
        self.colours = cs
        self.projection = projection
        self.target = target or cs.group
        f = projection or (lambda c: c)
        T = self.target
        self._img = [f(c) for c in cs.colours]
        self._mul = T.mul
        self._e = T.identity()
        self._items: dict[int, frozenset] = {}
        self._by_word: dict[tuple, list] = {}
        self._nc: dict[int, list] = {}

    def _item_ok(self, item: Item) -> bool:
        word, labels = item
        acc: dict[int, Element] = {}
        mul, img = self._mul, self._img
        for c, l in zip(word, labels):
            acc[l] = mul(acc[l], img[c]) if l in acc else img[c]
        return all(v == self._e for v in acc.values())

    def member_item(self, item, bound=None):
        return IN if item_noncrossing(item) and self._item_ok(item) else OUT

    def items(self, bound):
        if bound not in self._items:
            self._items[bound] = frozenset(it for it in noncrossing_universe(len(self.colours.colours), bound)
                                           if self._item_ok(it))
        return self._items[bound]

    def labelings_for_word(self, word):
        if word not in self._by_word:
            k = len(word)
            if k not in self._nc:
                self._nc[k] = list(noncrossing_labelings(k))
            self._by_word[word] = [lab for lab in self._nc[k] if self._item_ok((word, lab))]
        return self._by_word[word]

    def __repr__(self):
        return f"PredicateCategory({self.colours})"


class GeneratedCategory(CategoryHandle):
    """Category generated by a base category and extra partitions, closed up to a bound."""

    kind = "generated"

    def __init__(self, cs: ColourSet, generators: Iterable[ColouredPartition] = (),
                 base: CategoryHandle | None = None, bound: int = 6, cache_cap: int = DEFAULT_CACHE_CAP):
        self.colours = cs
        self.generators = tuple(generators)
        for g in self.generators:
            if g.colours != cs:
                raise InputError("generator uses a different colour set")
        self.base = base
        self.bound = bound
        self.cache_cap = cache_cap
        self._caches: dict[int, frozenset] = {}
        self._by_word: dict[tuple, list] | None = None

    def close(self, bound: int | None = None) -> frozenset:
        bound = self.bound if bound is None else bound
        if bound > MAX_CLOSURE_BOUND:
            raise ResourceError(f"closure bound {bound} exceeds {MAX_CLOSURE_BOUND}")
        if bound not in self._caches:
            seeds = [item_of(g) for g in self.generators]
            base = self.base.items(bound) if self.base is not None else frozenset()
            self._caches[bound] = bounded_closure(self.colours, seeds, bound, base, self.cache_cap)
        return self._caches[bound]

    def member_item(self, item, bound=None):
        bound = self.bound if bound is None else bound
        if len(item[0]) > bound:
            return NOT_IN_UP_TO_BOUND
        return IN if item in self.close(bound) else NOT_IN_UP_TO_BOUND

    def items(self, bound):
        return self.close(bound)

    def labelings_for_word(self, word):
        if len(word) > self.bound:
            raise ResourceError(f"{len(word)} points exceed the closure bound {self.bound}")
        if self._by_word is None:
            idx: dict[tuple, list] = {}
            for w, lab in self.close():
                idx.setdefault(w, []).append(lab)
            self._by_word = {w: sorted(v) for w, v in idx.items()}
        return self._by_word.get(word, [])

    def __repr__(self):
        return f"GeneratedCategory({self.colours}, {len(self.generators)} generators, bound={self.bound})"


def bounded_closure(cs: ColourSet, seeds: Iterable[Item], bound: int, base: frozenset = frozenset(),
                    cache_cap: int = DEFAULT_CACHE_CAP) -> frozenset:
    """Least set of one-row items with at most ``bound`` points containing ``base``,
    ``seeds`` and the pair items ``(c, c^-1)``, closed under the category operations.

    ``base`` must itself be closed (e.g. all members of a predicate category);
    only pairs involving at least one non-base item are then combined.
    Compositions are applied whenever their result fits the bound, even when
    the unreduced concatenation would not.
    """
    inv = cs.inv_index
    nc = len(cs.colours)
    seeds = list(seeds)
    # once every non-crossing item is present nothing new can appear
    full = universe_size(nc, bound) if all(item_noncrossing(s) for s in seeds) else float("inf")
    cache: set = set(base)
    by_prefix: dict[tuple, list] = {}
    by_suffix: dict[tuple, list] = {}
    by_size: dict[int, list] = {}

    def index(it):
        w = it[0]
        k = len(w)
        by_size.setdefault(k, []).append(it)
        for m in range(1, k + 1):
            by_prefix.setdefault((w[:m], k), []).append(it)
            by_suffix.setdefault((w[k - m:], k), []).append(it)

    for it in cache:
        index(it)
    heap: list = []

    def add(it):
        if len(it[0]) <= bound and it not in cache:
            cache.add(it)
            if len(cache) > cache_cap:
                raise ResourceError(f"closure cache exceeded {cache_cap} items")
            index(it)
            heapq.heappush(heap, (len(it[0]), it))

    for c in range(nc):
        add(((inv[c], c), (0, 0)))
    for s in seeds:
        add(s)
    while heap and len(cache) < full:
        _, z = heapq.heappop(heap)
        wz = z[0]
        k = len(wz)
        for r in range(1, k):
            add(rotate_item(z, r))
        add(revinv_item(z, inv))
        for i in range(k):
            if k >= 2 and wz[(i + 1) % k] == inv[wz[i]]:
                add(contract_adjacent(z, i))
        for j in range(0, bound + 1):
            ys = by_size.get(j)
            if not ys:
                continue
            if k + j <= bound:
                for y in list(ys):
                    add(concat_item(z, y))
                    add(concat_item(y, z))
                continue
            m = (k + j - bound + 1) // 2
            if m > min(k, j):
                continue
            key = tuple(inv[c] for c in reversed(wz[k - m:]))
            for y in list(by_prefix.get((key, j), ())):
                add(glue_item(z, y, m))
            key = tuple(inv[c] for c in reversed(wz[:m]))
            for x in list(by_suffix.get((key, j), ())):
                add(glue_item(x, z, m))
    return frozenset(cache)


# ---------------------------------------------------------------------------
# constructors and queries
# ---------------------------------------------------------------------------

def predicate_category(cs: ColourSet, projection: Callable | None = None,
                       target: DiscreteGroup | None = None) -> PredicateCategory:
    return PredicateCategory(cs, projection, target)


def amalgamated_category(cs: ColourSet, L: Subgroup, factorizations: Iterable[Sequence[Element]],
                         bound: int = 6, extra: Iterable[ColouredPartition] = ()) -> GeneratedCategory:
    """Closure of the predicate category together with ``beta`` over each factorization."""
    G = cs.group
    gens = []
    for f in factorizations:
        f = tuple(f)
        for c in f:
            if c not in cs:
                raise InputError(f"factorization letter {c!r} is not a colour")
        if not L.contains(G.product(f)):
            raise InputError("factorization does not multiply to an element of the subgroup")
        gens.append(beta(cs, f))
    return GeneratedCategory(cs, gens + list(extra), base=predicate_category(cs), bound=bound)


def hom_set(handle: CategoryHandle, w: Sequence[Element], v: Sequence[Element],
            bound: int | None = None) -> tuple[list[ColouredPartition], bool]:
    """Members of ``C(w, v)`` as partitions with upper row ``w`` and lower row ``v``.

    Returns ``(partitions, complete)``; ``complete`` is False for generated
    categories, whose hom-sets are only known up to the closure bound.
    """
    w, v = tuple(w), tuple(v)
    cs = handle.colours
    k = len(w) + len(v)
    if isinstance(handle, GeneratedCategory):
        b = handle.bound if bound is None else bound
        if k > b:
            raise ResourceError(f"{k} points exceed the closure bound {b}")
    candidates = enumerate_partitions(cs, w, v, noncrossing_only=True, bound=max(k, 12))
    out = [p for p in candidates if handle.member_item(item_of(p), bound) == IN]
    return out, not isinstance(handle, GeneratedCategory)


def intersect_bounded(h1: CategoryHandle, h2: CategoryHandle, bound: int) -> frozenset:
    """One-row items (all points in the lower row) lying in both categories."""
    if h1.colours != h2.colours:
        raise InputError("categories use different colour alphabets")
    return h1.items(bound) & h2.items(bound)


def equal_bounded(h1: CategoryHandle, h2: CategoryHandle, bound: int) -> bool:
    if h1.colours != h2.colours:
        raise InputError("categories use different colour alphabets")
    return h1.items(bound) == h2.items(bound)


def one_row_partitions(cs: ColourSet, items: Iterable[Item]) -> list[ColouredPartition]:
    return sorted((partition_of(cs, it) for it in items), key=lambda p: (p.size, p.lower, p.blocks))
