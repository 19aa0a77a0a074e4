"""Coloured two-row partitions and their diagrammatic calculus.

Points are numbered row-major: upper points ``0..n-1`` (printed ``u1..un``),
then lower points ``n..n+m-1`` (printed ``l1..lm``). A partition stores its
blocks as sorted tuples of point numbers, blocks sorted by least point, so
two partitions are equal iff their fields are equal.

Every partition also has a *one-row form*: the word ``revinv(upper) + lower``
with the points laid out as ``un..u1, l1..lm``. Rotations act on one-row
forms as cyclic shifts, which is how ``category`` closes sets of partitions.
"""

from __future__ import annotations

import re
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .errors import InputError, ResourceError
from .groups import DiscreteGroup, Element, FGAbelian, Subgroup, split_top_level

DEFAULT_POINT_BOUND = 12


class ColourSet:
    """A symmetric generating set of a group, not containing the identity."""

    def __init__(self, group: DiscreteGroup, colours: Iterable[Element]):
        self.group = group
        cols = sorted(set(colours))
        if not cols:
            raise InputError("colour set must be non-empty")
        group.check(*cols)
        e = group.identity()
        if e in cols:
            raise InputError("colour set must not contain the identity")
        if any(group.inv(c) not in cols for c in cols):
            raise InputError("colour set must be closed under inverses")
        gen = Subgroup(group, cols)
        if not all(gen.contains(g) for g in group.generators):
            raise InputError("colours do not generate the group")
        self.colours = tuple(cols)
        self.index = {c: i for i, c in enumerate(cols)}
        self.inv_index = tuple(self.index[group.inv(c)] for c in cols)

    def __repr__(self):
        return "{" + ",".join(self.group.format_element(c) for c in self.colours) + "}"

    def __eq__(self, other):
        return isinstance(other, ColourSet) and self.group is other.group and self.colours == other.colours

    def __hash__(self):
        return hash(self.colours)

    def __contains__(self, c):
        return c in self.index

    def inv(self, c: Element) -> Element:
        return self.group.inv(c)

    def revinv(self, word: Sequence[Element]) -> tuple:
        return tuple(self.group.inv(c) for c in reversed(word))

    def format(self, c: Element) -> str:
        return self.group.format_element(c)

    def parse(self, text: str) -> Element:
        c = self.group.parse_element(text)
        if c not in self.index:
            raise InputError(f"{text!r} is not one of the colours {self}")
        return c

    @classmethod
    def uncoloured(cls) -> "ColourSet":
        """Single self-inverse colour; used to model uncoloured partitions."""
        return cls(FGAbelian(0, (2,)), [(1,)])


@dataclass(frozen=True)
class ColouredPartition:
    upper: tuple
    lower: tuple
    blocks: tuple
    colours: ColourSet = field(compare=False, hash=False, repr=False)

    @property
    def n_upper(self) -> int:
        return len(self.upper)

    @property
    def n_lower(self) -> int:
        return len(self.lower)

    @property
    def size(self) -> int:
        return len(self.upper) + len(self.lower)

    def point_colour(self, x: int):
        n = len(self.upper)
        return self.upper[x] if x < n else self.lower[x - n]

    def point_name(self, x: int) -> str:
        n = len(self.upper)
        return f"u{x + 1}" if x < n else f"l{x - n + 1}"

    def __str__(self):
        return format_partition(self)


@dataclass(frozen=True)
class CompositionResult:
    partition: ColouredPartition
    removed_loops: int


def _canonical_blocks(blocks: Iterable[Iterable[int]]) -> tuple:
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


def _raw(cs: ColourSet, upper, lower, blocks) -> ColouredPartition:
    return ColouredPartition(tuple(upper), tuple(lower), _canonical_blocks(blocks), cs)


def make_partition(cs: ColourSet, upper: Sequence[Element], lower: Sequence[Element],
                   blocks: Iterable[Iterable]) -> ColouredPartition:
    """Build a canonical partition. Points may be ints or names like ``"u1"``/``"l2"``."""
    upper, lower = tuple(upper), tuple(lower)
    for c in upper + lower:
        if c not in cs:
            raise InputError(f"unknown colour {c!r}")
    n, total = len(upper), len(upper) + len(lower)
    seen: set[int] = set()
    out = []
    for b in blocks:
        pts = []
        for x in b:
            x = _point_index(x, n, len(lower))
            if x in seen:
                raise InputError(f"point {x} appears twice")
            seen.add(x)
            pts.append(x)
        if not pts:
            raise InputError("empty block")
        out.append(pts)
    if seen != set(range(total)):
        raise InputError("blocks do not cover every point")
    return _raw(cs, upper, lower, out)


def _point_index(x, n: int, m: int) -> int:
    if isinstance(x, str):
        mt = re.fullmatch(r"([ul])(\d+)", x.strip())
        if not mt:
            raise InputError(f"bad point name {x!r}")
        k = int(mt.group(2))
        row_len = n if mt.group(1) == "u" else m
        if not 1 <= k <= row_len:
            raise InputError(f"point {x} out of range")
        return k - 1 if mt.group(1) == "u" else n + k - 1
    if not isinstance(x, int) or not 0 <= x < n + m:
        raise InputError(f"point {x!r} out of range")
    return x


def identity_partition(cs: ColourSet, word: Sequence[Element]) -> ColouredPartition:
    n = len(word)
    return make_partition(cs, word, word, [(i, n + i) for i in range(n)])


def empty_partition(cs: ColourSet) -> ColouredPartition:
    return _raw(cs, (), (), ())


def beta(cs: ColourSet, letters: Sequence[Element]) -> ColouredPartition:
    """Upper row one block, lower row one block, both spelling ``letters``."""
    n = len(letters)
    if n == 0:
        raise InputError("beta needs a non-empty word")
    return make_partition(cs, letters, letters, [range(n), range(n, 2 * n)])


def beta_upper(cs: ColourSet, letters: Sequence[Element]) -> ColouredPartition:
    """The upper half of ``beta``: one block on an upper row, no lower points."""
    if not letters:
        raise InputError("beta needs a non-empty word")
    return make_partition(cs, letters, (), [range(len(letters))])


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------

def cyclic_positions(p: ColouredPartition) -> list[int]:
    """Position of each point in the cyclic order u1..un, lm..l1."""
    n, m = p.n_upper, p.n_lower
    return list(range(n)) + [n + m - 1 - j for j in range(m)]


def blocks_noncrossing(blocks: Sequence[Sequence[int]]) -> bool:
    """Non-crossing test for blocks given by positions on a line (or circle)."""
    sorted_blocks = [sorted(b) for b in blocks]
    for i, xs in enumerate(sorted_blocks):
        if len(xs) < 2:
            continue
        for j, ys in enumerate(sorted_blocks):
            if i == j:
                continue
            gaps = {bisect_right(xs, y) % len(xs) for y in ys}
            if len(gaps) > 1:
                return False
    return True


def is_noncrossing(p: ColouredPartition) -> bool:
    pos = cyclic_positions(p)
    return blocks_noncrossing([[pos[x] for x in b] for b in p.blocks])


def colour_product_condition(p: ColouredPartition, projection: Callable | None = None,
                             group: DiscreteGroup | None = None) -> bool:
    """Per block: ordered product of upper colours equals that of lower colours.

    With ``projection`` (and its target ``group``) the products are compared
    after mapping every colour through the projection.
    """
    G = group or p.colours.group
    f = projection or (lambda c: c)
    n = p.n_upper
    for b in p.blocks:
        up = G.product(f(p.upper[x]) for x in b if x < n)
        lo = G.product(f(p.lower[x - n]) for x in b if x >= n)
        if up != lo:
            return False
    return True


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def _same_colours(p: ColouredPartition, q: ColouredPartition) -> None:
    if p.colours != q.colours:
        raise InputError("partitions use different colour sets")


def tensor(p: ColouredPartition, q: ColouredPartition) -> ColouredPartition:
    _same_colours(p, q)
    n1, m1, n2 = p.n_upper, p.n_lower, q.n_upper

    def sp(x):
        return x if x < n1 else x + n2

    def sq(x):
        return x + n1 if x < n2 else x + n1 + m1
    blocks = [[sp(x) for x in b] for b in p.blocks] + [[sq(x) for x in b] for b in q.blocks]
    return _raw(p.colours, p.upper + q.upper, p.lower + q.lower, blocks)


def tensor_all(parts: Sequence[ColouredPartition], cs: ColourSet | None = None) -> ColouredPartition:
    if not parts:
        if cs is None:
            raise InputError("empty tensor product needs a colour set")
        return empty_partition(cs)
    acc = parts[0]
    for q in parts[1:]:
        acc = tensor(acc, q)
    return acc


def compose(p: ColouredPartition, q: ColouredPartition) -> CompositionResult:
    """Place ``q`` on top of ``p`` (``q.lower`` glued to ``p.upper``)."""
    _same_colours(p, q)
    if q.lower != p.upper:
        raise InputError("colour mismatch: lower row of the top partition must equal the upper row of the bottom one")
    nq, k, m = q.n_upper, p.n_upper, p.n_lower
    # nodes: top 0..nq-1, middle nq..nq+k-1, bottom nq+k..nq+k+m-1
    parent = list(range(nq + k + m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(blk):
        r = find(blk[0])
        for x in blk[1:]:
            s = find(x)
            if s != r:
                parent[s] = r
    for b in q.blocks:
        union(list(b))
    for b in p.blocks:
        union([nq + x for x in b])
    groups: dict[int, list[int]] = {}
    for x in range(nq + k + m):
        groups.setdefault(find(x), []).append(x)
    blocks, loops = [], 0
    for members in groups.values():
        outer = [x if x < nq else x - k for x in members if x < nq or x >= nq + k]
        if outer:
            blocks.append(outer)
        else:
            loops += 1
    return CompositionResult(_raw(p.colours, q.upper, p.lower, blocks), loops)


def involution(p: ColouredPartition) -> ColouredPartition:
    n, m = p.n_upper, p.n_lower
    swap = [x + m for x in range(n)] + [x - n for x in range(n, n + m)]
    return _raw(p.colours, p.lower, p.upper, [[swap[x] for x in b] for b in p.blocks])


def _relabel(p: ColouredPartition, upper, lower, mapping) -> ColouredPartition:
    return _raw(p.colours, upper, lower, [[mapping[x] for x in b] for b in p.blocks])


def rotate_down_left(p: ColouredPartition) -> ColouredPartition:
    """Move ``u1`` to become the new ``l1``, inverting its colour."""
    n, m = p.n_upper, p.n_lower
    if n == 0:
        raise InputError("cannot rotate down: upper row is empty")
    c = p.colours.inv(p.upper[0])
    mapping = [n - 1] + [x - 1 for x in range(1, n)] + [x for x in range(n, n + m)]
    return _relabel(p, p.upper[1:], (c,) + p.lower, mapping)


def rotate_up_left(p: ColouredPartition) -> ColouredPartition:
    """Move ``l1`` to become the new ``u1``, inverting its colour."""
    n, m = p.n_upper, p.n_lower
    if m == 0:
        raise InputError("cannot rotate up: lower row is empty")
    c = p.colours.inv(p.lower[0])
    mapping = [x + 1 for x in range(n)] + [0] + [x for x in range(n + 1, n + m)]
    return _relabel(p, (c,) + p.upper, p.lower[1:], mapping)


def rotate_down_right(p: ColouredPartition) -> ColouredPartition:
    """Move ``un`` to become the new last lower point, inverting its colour."""
    n, m = p.n_upper, p.n_lower
    if n == 0:
        raise InputError("cannot rotate down: upper row is empty")
    c = p.colours.inv(p.upper[-1])
    mapping = list(range(n - 1)) + [n + m - 1] + [x - 1 for x in range(n, n + m)]
    return _relabel(p, p.upper[:-1], p.lower + (c,), mapping)


def rotate_up_right(p: ColouredPartition) -> ColouredPartition:
    """Move the last lower point to become the new last upper point, inverting its colour."""
    n, m = p.n_upper, p.n_lower
    if m == 0:
        raise InputError("cannot rotate up: lower row is empty")
    c = p.colours.inv(p.lower[-1])
    mapping = list(range(n)) + [x + 1 for x in range(n, n + m - 1)] + [n]
    return _relabel(p, p.upper + (c,), p.lower[:-1], mapping)


# ---------------------------------------------------------------------------
# one-row forms
# ---------------------------------------------------------------------------

def rgs(labels: Sequence[int]) -> tuple:
    """Relabel block labels in order of first appearance."""
    seen: dict[int, int] = {}
    out = []
    for x in labels:
        if x not in seen:
            seen[x] = len(seen)
        out.append(seen[x])
    return tuple(out)


def to_one_row(p: ColouredPartition) -> tuple[tuple, tuple]:
    """``(word, labels)``: word ``revinv(upper)+lower`` and restricted-growth block labels."""
    n = p.n_upper
    label = [0] * p.size
    for i, b in enumerate(p.blocks):
        for x in b:
            label[x] = i
    pos_to_point = list(range(n - 1, -1, -1)) + list(range(n, p.size))
    word = p.colours.revinv(p.upper) + p.lower
    return word, rgs([label[x] for x in pos_to_point])


def from_one_row(cs: ColourSet, word: Sequence[Element], labels: Sequence[int], n_upper: int = 0) -> ColouredPartition:
    """Inverse of ``to_one_row`` for a chosen number of upper points."""
    word = tuple(word)
    upper = cs.revinv(word[:n_upper])
    lower = word[n_upper:]
    blocks: dict[int, list[int]] = {}
    for pos, lab in enumerate(labels):
        point = n_upper - 1 - pos if pos < n_upper else pos
        blocks.setdefault(lab, []).append(point)
    return _raw(cs, upper, lower, blocks.values())


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def noncrossing_labelings(k: int) -> Iterator[tuple]:
    """Restricted-growth labelings of all non-crossing partitions of ``0..k-1`` on a line."""
    def rec(points: list[int]) -> Iterator[list[list[int]]]:
        if not points:
            yield []
            return
        first, rest = points[0], points[1:]
        # choose the block of `first` as first < a_1 < ... < a_r from rest
        yield from _extend([first], rest, rec)

    for blocks in rec(list(range(k))):
        lab = [0] * k
        for i, b in enumerate(blocks):
            for x in b:
                lab[x] = i
        yield rgs(lab)


def _extend(block: list[int], rest: list[int], rec) -> Iterator[list[list[int]]]:
    # either close the block now (everything in rest is outside it) ...
    for tail in rec(rest):
        yield [block] + tail
    # ... or add rest[j]; points before it form an independent inner region
    for j in range(len(rest)):
        inner, after = rest[:j], rest[j + 1:]
        for inner_blocks in rec(inner):
            for more in _extend(block + [rest[j]], after, rec):
                yield inner_blocks + more


def all_labelings(k: int) -> Iterator[tuple]:
    """All restricted-growth strings of length ``k`` (every set partition)."""
    def rec(prefix: list[int], top: int):
        if len(prefix) == k:
            yield tuple(prefix)
            return
        for v in range(top + 2):
            prefix.append(v)
            yield from rec(prefix, max(top, v))
            prefix.pop()
    yield from rec([], -1)


def enumerate_partitions(cs: ColourSet, upper: Sequence[Element], lower: Sequence[Element],
                         noncrossing_only: bool = True, predicate: Callable | None = None,
                         bound: int = DEFAULT_POINT_BOUND) -> list[ColouredPartition]:
    """All set partitions of the points of ``(upper, lower)``, canonical and sorted."""
    upper, lower = tuple(upper), tuple(lower)
    for c in upper + lower:
        if c not in cs:
            raise InputError(f"unknown colour {c!r}")
    n, m = len(upper), len(lower)
    k = n + m
    if k > bound:
        raise ResourceError(f"{k} points exceed the enumeration bound {bound}")
    # position in the cyclic order -> point
    pos_to_point = list(range(n)) + [n + m - 1 - j for j in range(m)]
    out = []
    source = noncrossing_labelings(k) if noncrossing_only else all_labelings(k)
    for lab in source:
        blocks: dict[int, list[int]] = {}
        for pos, b in enumerate(lab):
            blocks.setdefault(b, []).append(pos_to_point[pos])
        p = _raw(cs, upper, lower, blocks.values())
        if predicate is None or predicate(p):
            out.append(p)
    out.sort(key=lambda p: p.blocks)
    return out


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

def format_partition(p: ColouredPartition) -> str:
    up = ",".join(p.colours.format(c) for c in p.upper)
    lo = ",".join(p.colours.format(c) for c in p.lower)
    blocks = "".join("[" + " ".join(p.point_name(x) for x in b) + "]" for b in p.blocks)
    return f"upper={up} ; lower={lo} ; blocks={blocks}"


def parse_partition(cs: ColourSet, text: str) -> ColouredPartition:
    fields = {}
    for part in text.strip().split(";"):
        if "=" not in part:
            raise InputError(f"bad partition field {part!r}")
        key, val = part.split("=", 1)
        fields[key.strip()] = val.strip()
    if set(fields) != {"upper", "lower", "blocks"}:
        raise InputError("partition literal needs upper=, lower= and blocks= fields")
    upper = [cs.parse(t) for t in split_top_level(fields["upper"])]
    lower = [cs.parse(t) for t in split_top_level(fields["lower"])]
    btxt = fields["blocks"]
    if not re.fullmatch(r"(\[[^\[\]]*\])*", btxt):
        raise InputError(f"bad block list {btxt!r}")
    blocks = [b.split() for b in re.findall(r"\[([^\[\]]*)\]", btxt)]
    return make_partition(cs, upper, lower, blocks)


def ascii_picture(p: ColouredPartition) -> str:
    """Two text rows listing each point with its block index."""
    index = {}
    for i, b in enumerate(p.blocks):
        for x in b:
            index[x] = i
    n = p.n_upper
    up = " ".join(f"{p.colours.format(c)}:{index[i]}" for i, c in enumerate(p.upper))
    lo = " ".join(f"{p.colours.format(c)}:{index[n + j]}" for j, c in enumerate(p.lower))
    return f"upper | {up}\nlower | {lo}"
