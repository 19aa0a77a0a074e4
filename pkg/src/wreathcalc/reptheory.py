"""Representation semiring of the amalgamated free wreath product, from partition counts.

Irreducibles are labelled by ``OneDim(λ)`` (λ in the subgroup) and by
``Higher(w)`` for canonical words ``w`` in the word monoid, where adjacent
letters may trade subgroup elements: ``(.., gλ, h, ..) ~ (.., g, λh, ..)``.

Everything is derived from hom-set sizes of a partition category. The
engine works with *objects*: a colour word together with an idempotent
partition acting on it. Two kinds of segments occur:

* ``merge`` over a factorization ``f`` of a letter ``x``: one block holding
  all points of ``f`` in both rows. Its image inside ``a(f_1)⊗...⊗a(f_k)``
  is the ``N``-dimensional corepresentation ``a(x)``.
* ``beta`` over a factorization of ``λ`` in the subgroup: its image is the
  line spanned by the diagonal vector, the one-dimensional ``λ``.

For idempotents ``p, q`` (up to scalars) the space ``q Mor(w, v) p`` has a
basis of the partitions ``r`` with ``q∘r∘p = r``, so its dimension is a
count. On one-row forms that condition says: every merge segment lies in
a single block, and every beta segment is a whole block.

Objects are processed by size; each contributes at most one new
irreducible (residue 0 or 1) and the multiplicity matrix is unitriangular
on the objects that introduced labels. Fusion expands labels back into
objects by Möbius inversion, concatenates them and counts again.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Sequence

from .category import (CategoryHandle, GeneratedCategory, amalgamated_category, predicate_category)
from .errors import InputError, ResourceError, StructuralError
from .groups import DiscreteGroup, Element, Subgroup, quotient, transversal
from .partition import ColourSet

MIN_DIMENSION_N = 4


# ---------------------------------------------------------------------------
# word monoid
# ---------------------------------------------------------------------------

def canonical_word(G: DiscreteGroup, L: Subgroup, w: Sequence[Element], rep: Callable | None = None) -> tuple:
    """Left-to-right sweep: ``w_i = rep(w_i) λ_i``, push ``λ_i`` into ``w_{i+1}``."""
    w = list(w)
    G.check(*w)
    rep = rep or transversal(G, L)
    for i in range(len(w) - 1):
        r = rep(w[i])
        lam = G.mul(G.inv(r), w[i])
        w[i] = r
        w[i + 1] = G.mul(lam, w[i + 1])
    return tuple(w)


def words_equivalent(G: DiscreteGroup, L: Subgroup, w: Sequence[Element], v: Sequence[Element],
                     rep: Callable | None = None) -> bool:
    if len(w) != len(v):
        return False
    rep = rep or transversal(G, L)
    return canonical_word(G, L, w, rep) == canonical_word(G, L, v, rep)


def equivalence_class(G: DiscreteGroup, L: Subgroup, w: Sequence[Element]) -> set:
    """All words reachable by single relation moves (finite subgroup only)."""
    lams = L.elements()
    start = tuple(w)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for i in range(len(x) - 1):
            for lam in lams:
                y = list(x)
                y[i] = G.mul(x[i], lam)
                y[i + 1] = G.mul(G.inv(lam), x[i + 1])
                y = tuple(y)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return seen


# ---------------------------------------------------------------------------
# labels
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class RepLabel:
    kind: str            # "onedim" or "higher"
    value: tuple         # element (onedim) or canonical word (higher)

    @staticmethod
    def onedim(lam: Element) -> "RepLabel":
        return RepLabel("onedim", lam)

    @staticmethod
    def higher(word: Sequence[Element]) -> "RepLabel":
        if not word:
            raise InputError("higher labels need a non-empty word")
        return RepLabel("higher", tuple(word))

    def format(self, G: DiscreteGroup) -> str:
        if self.kind == "onedim":
            return f"OneDim({G.format_element(self.value)})"
        return "Higher(" + " ".join(G.format_element(x) for x in self.value) + ")"


class Decomposition(dict):
    """Label -> positive multiplicity."""

    def format(self, G: DiscreteGroup) -> str:
        if not self:
            return "0"
        return " + ".join((f"{m}*" if m != 1 else "") + lab.format(G) for lab, m in sorted(self.items()))


Segment = tuple  # ("merge" | "beta", colour word)
Obj = tuple      # tuple of segments


@dataclass
class SemiringTable:
    group: DiscreteGroup
    subgroup: Subgroup
    N: int
    bound: int
    labels: list
    dims: dict
    sizes: dict
    objects: list                   # objects that introduced a label, parallel to labels
    multiplicity: list              # rows of M for every processed object
    processed: list                 # every processed object, parallel to multiplicity
    tensor: dict = field(default_factory=dict)
    engine: "RepEngine" = field(default=None, repr=False)

    def label_index(self, lab: RepLabel) -> int:
        try:
            return self.labels.index(lab)
        except ValueError:
            raise ResourceError(f"{lab.format(self.group)} is not tabulated at bound {self.bound}") from None


class RepEngine:
    """Counting engine over a partition category.

    ``group`` is the group whose words label irreducibles; colours live in
    ``cs`` (possibly over a different group) and ``image`` sends a colour to
    ``group``. This covers both the amalgamated category over Γ and a
    category over a quotient pulled back to Γ's colours.
    """

    def __init__(self, group: DiscreteGroup, L: Subgroup, cs: ColourSet, handle: CategoryHandle,
                 N: int, bound: int, max_word_len: int = 3, image: Callable | None = None):
        if N < MIN_DIMENSION_N:
            raise InputError(f"counts equal dimensions only for N >= {MIN_DIMENSION_N}")
        self.group, self.L, self.cs, self.handle = group, L, cs, handle
        self.N, self.bound, self.max_word_len = N, bound, max_word_len
        self.image = image or (lambda c: c)
        self.rep = transversal(group, L)
        self._hom: dict = {}
        self.factor = self._factorizations(bound)

    # -- letters ---------------------------------------------------------

    def _factorizations(self, radius: int) -> dict:
        """Lex-first shortest non-empty colour word for every element within ``radius``."""
        G = self.group
        cols = list(self.cs.colours)
        found: dict = {}
        frontier = [((), G.identity())]
        for _ in range(radius):
            nxt = []
            for w, x in frontier:
                for c in cols:
                    y = G.mul(x, self.image(c))
                    if y not in found:
                        found[y] = w + (c,)
                        nxt.append((w + (c,), y))
            frontier = nxt
        return found

    def size(self, x: Element) -> int:
        f = self.factor.get(x)
        return len(f) if f is not None else self.bound + 1

    def word_size(self, w: Sequence[Element]) -> int:
        return sum(self.size(x) for x in w)

    def canonical(self, w) -> tuple:
        return canonical_word(self.group, self.L, w, self.rep)

    # -- objects and counts ----------------------------------------------

    def object_of_word(self, w: Sequence[Element]) -> Obj:
        return tuple(("merge", self.factor[x]) for x in w)

    def object_of_onedim(self, lam: Element) -> Obj:
        if lam == self.group.identity():
            return ()
        return (("beta", self.factor[lam]),)

    @staticmethod
    def object_word(obj: Obj) -> tuple:
        return tuple(c for _, f in obj for c in f)

    def object_dim(self, obj: Obj) -> int:
        d = 1
        for kind, _ in obj:
            if kind == "merge":
                d *= self.N
        return d

    def hom(self, X: Obj, Y: Obj) -> int:
        key = (X, Y) if (X, Y) <= (Y, X) else (Y, X)
        if key not in self._hom:
            self._hom[key] = self._count(*key)
        return self._hom[key]

    def _count(self, X: Obj, Y: Obj) -> int:
        cs = self.cs
        w, v = self.object_word(X), self.object_word(Y)
        k = len(w) + len(v)
        if k > self.bound:
            raise ResourceError(f"hom count needs {k} points, beyond the bound {self.bound}")
        word = tuple(cs.index[c] for c in cs.revinv(w)) + tuple(cs.index[c] for c in v)
        segs = []
        pos = len(w)
        for kind, f in X:             # upper row is reversed in one-row form
            segs.append((kind, range(pos - len(f), pos)))
            pos -= len(f)
        pos = len(w)
        for kind, f in Y:
            segs.append((kind, range(pos, pos + len(f))))
            pos += len(f)
        count = 0
        for lab in self.handle.labelings_for_word(word):
            if all(_segment_fixed(lab, kind, r) for kind, r in segs):
                count += 1
        return count

    # -- peeling ---------------------------------------------------------

    def candidate_objects(self) -> list:
        """(sort key, label, object, dimension) for every object small enough to peel."""
        G, L = self.group, self.L
        half = self.bound // 2
        e = G.identity()
        letters = sorted(x for x in self.factor if self.size(x) <= half)
        out = [((0, 0, 0, ()), RepLabel.onedim(e), (), 1)]
        for lam in letters:
            if lam != e and L.contains(lam):
                obj = self.object_of_onedim(lam)
                out.append(((len(self.object_word(obj)), 0, 1, lam), RepLabel.onedim(lam), obj, 1))
        classes: dict = {}
        for n in range(1, self.max_word_len + 1):
            for w in product(letters, repeat=n):
                s = self.word_size(w)
                if s > half:
                    continue
                c = self.canonical(w)
                best = classes.get(c)
                if best is None or (s, w) < best:
                    classes[c] = (s, w)
        for c, (s, w) in classes.items():
            out.append(((s, 1, len(w), w), RepLabel.higher(c), self.object_of_word(w), self.N ** len(w)))
        out.sort(key=lambda t: t[0])
        return out

    def extract(self) -> SemiringTable:
        labels, dims, sizes, objects = [], {}, {}, []
        rows, processed = [], []
        pivot_rows = []     # row of M for the object that introduced label j
        for _, lab, obj, dim in self.candidate_objects():
            x = []
            for j, pobj in enumerate(objects):
                h = self.hom(obj, pobj)
                xj = h - sum(x[l] * pivot_rows[j][l] for l in range(j))
                if xj < 0:
                    raise StructuralError(f"negative multiplicity of {labels[j].format(self.group)} "
                                          f"in the object for {lab.format(self.group)}")
                x.append(xj)
            residue = self.hom(obj, obj) - sum(t * t for t in x)
            rest = dim - sum(t * dims[labels[j]] for j, t in enumerate(x))
            if residue == 0:
                if rest != 0:
                    raise StructuralError(f"{lab.format(self.group)}: no new irreducible but {rest} dimensions left")
                rows.append(x)
                processed.append(obj)
                continue
            if residue != 1:
                raise StructuralError(f"{lab.format(self.group)}: residue {residue} is not a single new irreducible "
                                      f"(counts {[self.hom(obj, o) for o in objects]}, self {self.hom(obj, obj)})")
            if lab in dims:
                raise StructuralError(f"label {lab.format(self.group)} produced twice")
            if rest <= 0:
                raise StructuralError(f"{lab.format(self.group)} would get dimension {rest}")
            labels.append(lab)
            dims[lab] = rest
            sizes[lab] = len(self.object_word(obj))
            objects.append(obj)
            pivot_rows.append(x + [1])
            rows.append(x + [1])
            processed.append(obj)
        width = len(labels)
        rows = [r + [0] * (width - len(r)) for r in rows]
        return SemiringTable(self.group, self.L, self.N, self.bound, labels, dims, sizes,
                             objects, rows, processed, engine=self)

    # -- fusion ----------------------------------------------------------

    def expansion(self, table: SemiringTable, lab: RepLabel) -> dict:
        """Label as an integer combination of introducing objects (Möbius inversion)."""
        cache = getattr(table, "_expansions", None)
        if cache is None:
            cache = table._expansions = {}
        j = table.label_index(lab)
        if j not in cache:
            row = table.multiplicity[table.processed.index(table.objects[j])]
            comb = {j: 1}
            for l in range(j):
                if row[l]:
                    for o, c in self.expansion(table, table.labels[l]).items():
                        comb[o] = comb.get(o, 0) - row[l] * c
            cache[j] = {o: c for o, c in comb.items() if c}
        return cache[j]

    def fuse(self, table: SemiringTable, a: RepLabel, b: RepLabel) -> Decomposition:
        ea, eb = self.expansion(table, a), self.expansion(table, b)
        sa, sb = table.sizes[a], table.sizes[b]
        out = Decomposition()
        for g in table.labels:
            if sa + sb + table.sizes[g] > self.bound:
                continue
            eg = self.expansion(table, g)
            m = 0
            for i, ci in ea.items():
                for j, cj in eb.items():
                    prod_obj = table.objects[i] + table.objects[j]
                    for k, ck in eg.items():
                        m += ci * cj * ck * self.hom(prod_obj, table.objects[k])
            if m < 0:
                raise StructuralError(f"negative multiplicity {m}")
            if m:
                out[g] = m
        total = sum(m * table.dims[g] for g, m in out.items())
        if total != table.dims[a] * table.dims[b]:
            raise ResourceError(f"{a.format(self.group)} ⊗ {b.format(self.group)} is not resolvable at bound "
                                f"{self.bound} (found {total} of {table.dims[a] * table.dims[b]} dimensions)")
        return out

    def tabulate(self, table: SemiringTable) -> dict:
        """All label products that resolve within the bound."""
        for a in table.labels:
            for b in table.labels:
                if table.sizes[a] + table.sizes[b] > self.bound:
                    continue
                try:
                    table.tensor[(a, b)] = self.fuse(table, a, b)
                except ResourceError:
                    pass
        return table.tensor


def _segment_fixed(lab: tuple, kind: str, r: range) -> bool:
    if not len(r):
        return True
    b = lab[r[0]]
    if any(lab[i] != b for i in r):
        return False
    if kind == "merge":
        return True
    return sum(1 for x in lab if x == b) == len(r)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def gram_dims(handle: CategoryHandle, words: Sequence[Sequence[Element]], N: int) -> tuple[list, bool]:
    """Matrix of ``|C(w, w')|`` and whether every entry is exact.

    Entries from generated categories are closure counts, hence lower bounds.
    """
    cs = handle.colours
    M = []
    for w in words:
        row = []
        for v in words:
            word = tuple(cs.index[c] for c in cs.revinv(tuple(w))) + tuple(cs.index[c] for c in v)
            row.append(len(handle.labelings_for_word(word)))
        M.append(row)
    return M, not isinstance(handle, GeneratedCategory)


def default_factorizations(cs: ColourSet, L: Subgroup, radius: int) -> list:
    """Shortest colour words for the non-identity subgroup elements within ``radius``."""
    G = cs.group
    e = G.identity()
    found: dict = {}
    frontier = [((), e)]
    for _ in range(radius):
        nxt = []
        for w, x in frontier:
            for c in cs.colours:
                y = G.mul(x, c)
                if y not in found:
                    found[y] = w + (c,)
                    nxt.append((w + (c,), y))
        frontier = nxt
    gens = set(L.generators)
    if L.is_finite():
        wanted = [g for g in L.elements() if g != e]
    else:
        wanted = [g for g in found if g != e and L.contains(g)]
    out = []
    for g in sorted(wanted):
        if g in found:
            out.append(found[g])
        elif g in gens:
            raise ResourceError(f"no factorization of the subgroup generator {G.format_element(g)} "
                                f"within {radius} letters")
    return out


def amalgamated_engine(cs: ColourSet, L: Subgroup, N: int, bound: int = 6, max_word_len: int = 3,
                       handle: CategoryHandle | None = None) -> RepEngine:
    G = cs.group
    if handle is None:
        if L.generators and any(g != G.identity() for g in L.generators):
            handle = amalgamated_category(cs, L, default_factorizations(cs, L, bound), bound=bound)
        else:
            handle = predicate_category(cs)
    return RepEngine(G, L, cs, handle, N, bound, max_word_len)


def extract_irreducibles(engine: RepEngine) -> SemiringTable:
    return engine.extract()


def fuse(table: SemiringTable, a: RepLabel, b: RepLabel) -> Decomposition:
    if (a, b) in table.tensor:
        return table.tensor[(a, b)]
    return table.engine.fuse(table, a, b)


def dimension(table: SemiringTable, lab: RepLabel) -> int:
    table.label_index(lab)
    return table.dims[lab]


def build_table(cs: ColourSet, L: Subgroup, N: int, bound: int = 6, max_word_len: int = 3,
                tabulate: bool = True) -> SemiringTable:
    eng = amalgamated_engine(cs, L, N, bound, max_word_len)
    table = eng.extract()
    if tabulate:
        eng.tabulate(table)
    return table


def check_dimension_multiplicative(table: SemiringTable) -> list:
    """Products whose dimensions do not add up (empty when consistent)."""
    bad = []
    for (a, b), d in table.tensor.items():
        if sum(m * table.dims[g] for g, m in d.items()) != table.dims[a] * table.dims[b]:
            bad.append((a, b))
    return bad


def check_gram_factorization(table: SemiringTable) -> bool:
    """Counts between processed objects equal ``M Mᵀ``."""
    eng = table.engine
    rows, objs = table.multiplicity, table.processed
    for i in range(len(objs)):
        for j in range(i + 1):
            if eng.hom(objs[i], objs[j]) != sum(a * b for a, b in zip(rows[i], rows[j])):
                return False
    return True


# ---------------------------------------------------------------------------
# glued model
# ---------------------------------------------------------------------------

@dataclass
class GluedReport:
    ok: bool
    bijection: bool
    tensor_match: bool
    dims_match: bool
    n_labels: int
    n_glued_labels: int
    n_products: int
    problems: list


def glued_semiring(cs: ColourSet, L: Subgroup, N: int, bound: int = 6, max_word_len: int = 3,
                   table: SemiringTable | None = None):
    """Compare the amalgamated semiring with the glued model over ``Γ/Λ``.

    Glued labels are pairs (irreducible of the free wreath product over the
    quotient, element ``h`` of Γ) with ``[h]`` equal to the product of the
    word. The map sends ``Higher(g_1..g_n)`` to ``(([g_1]..[g_n]), g_1⋯g_n)``
    and ``OneDim(λ)`` to ``(trivial, λ)``.
    """
    G = cs.group
    if not G.is_abelian:
        raise InputError("the glued model needs an abelian group")
    if not G.is_finite:
        raise InputError("the glued model comparison enumerates lifts and needs a finite group")
    if table is None:
        table = build_table(cs, L, N, bound, max_word_len)
    Q, proj = quotient(G, L)
    qeng = RepEngine(Q, Subgroup(Q, []), cs, predicate_category(cs, proj, Q), N, bound,
                     max_word_len, image=proj)
    qtable = qeng.extract()
    qeng.tabulate(qtable)
    eng = table.engine
    e_q = Q.identity()

    def phi(lab: RepLabel):
        if lab.kind == "onedim":
            return RepLabel.onedim(e_q), lab.value
        return RepLabel.higher(tuple(proj(x) for x in lab.value)), G.product(lab.value)

    # glued labels of bounded size: minimal size of a lift
    fibres: dict = {}
    for g in G.elements():
        fibres.setdefault(proj(g), []).append(g)
    half = bound // 2
    glued: dict = {}
    for qlab in qtable.labels:
        if qlab.kind == "onedim":
            for h in L.elements():
                s = 0 if h == G.identity() else eng.size(h)
                if s <= half:
                    glued[(qlab, h)] = s
            continue
        for lift in product(*(fibres[c] for c in qlab.value)):
            if len(lift) > max_word_len:
                continue
            s = eng.word_size(lift)
            if s > half:
                continue
            key = (qlab, G.product(lift))
            glued[key] = min(s, glued.get(key, s))
    problems = []
    images = {}
    for lab in table.labels:
        img = phi(lab)
        if img in images.values():
            problems.append(f"{lab.format(G)} collides with another label")
        images[lab] = img
        if img not in glued:
            problems.append(f"{lab.format(G)} maps outside the bounded glued label set")
    bijection = not problems and set(images.values()) == set(glued)
    if set(images.values()) != set(glued):
        problems.append(f"{len(set(glued) - set(images.values()))} glued labels not hit")
    dims_ok = True
    for lab, (qlab, h) in images.items():
        if qlab in qtable.dims and qtable.dims[qlab] != table.dims[lab]:
            dims_ok = False
            problems.append(f"dimension mismatch at {lab.format(G)}")
    tensor_ok = True
    for (a, b), dec in table.tensor.items():
        (qa, ha), (qb, hb) = images[a], images[b]
        try:
            qdec = qtable.tensor.get((qa, qb)) or qeng.fuse(qtable, qa, qb)
        except ResourceError as exc:
            tensor_ok = False
            problems.append(f"quotient product unavailable: {exc}")
            continue
        h = G.mul(ha, hb)
        want = {(g, h): m for g, m in qdec.items()}
        got = {}
        for g, m in dec.items():
            got[images[g]] = got.get(images[g], 0) + m
        if want != got:
            tensor_ok = False
            problems.append(f"tensor mismatch at {a.format(G)} ⊗ {b.format(G)}")
    report = GluedReport(bijection and tensor_ok and dims_ok, bijection, tensor_ok, dims_ok,
                         len(table.labels), len(glued), len(table.tensor), problems)
    return table, qtable, report
