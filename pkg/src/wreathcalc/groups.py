"""Computable discrete groups: permutation groups and f.g. abelian groups.

Elements are plain tuples in normal form, so equality is structural and the
lexicographic order on tuples is the fixed total order used for
transversals and canonical words.

* ``FiniteGroup`` elements are image tables of permutations of ``0..n-1``;
  the product ``mul(a, b)`` is the composite "apply ``b``, then ``a``".
* ``FGAbelian`` elements are integer vectors ``(free..., torsion...)`` with
  every torsion coordinate kept in ``[0, k_i)``.
"""

from __future__ import annotations

import re
from collections import deque
from itertools import product
from typing import Callable, Iterable, Iterator, Sequence

from .errors import InputError, ResourceError

Element = tuple

DEFAULT_CLOSURE_CAP = 100_000


# ---------------------------------------------------------------------------
# integer lattices
# ---------------------------------------------------------------------------

def hermite_rows(rows: Iterable[Sequence[int]], ncols: int) -> list[tuple[list[int], int]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns ``(row, pivot_column)`` pairs in echelon order. Pivots are
    positive and the entries above each pivot are reduced into
    ``[0, pivot)``.
    """
    A = [list(r) for r in rows if any(r)]
    basis: list[tuple[list[int], int]] = []
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(A)) if A[i][c] != 0]
            if not nz:
                break
            i = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[i] = A[i], A[r]
            if A[r][c] < 0:
                A[r] = [-x for x in A[r]]
            clean = True
            for j in range(r + 1, len(A)):
                if A[j][c]:
                    q = A[j][c] // A[r][c]
                    A[j] = [a - q * b for a, b in zip(A[j], A[r])]
                    if A[j][c]:
                        clean = False
            if clean:
                break
        if r < len(A) and A[r][c] != 0:
            for j in range(r):
                q = A[j][c] // A[r][c]
                if q:
                    A[j] = [a - q * b for a, b in zip(A[j], A[r])]
            r += 1
            A = A[:r] + [row for row in A[r:] if any(row)]
    for i in range(r):
        piv = next(c for c, x in enumerate(A[i]) if x)
        basis.append((A[i], piv))
    return basis


def lattice_reduce(v: Sequence[int], basis: list[tuple[list[int], int]]) -> list[int]:
    """Reduce ``v`` modulo a Hermite basis; the result is zero iff ``v`` is in the lattice."""
    v = list(v)
    for row, c in basis:
        q = v[c] // row[c]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return v


def smith_normal_form(B: Sequence[Sequence[int]], ncols: int):
    """Smith normal form ``D = U B V`` with unimodular ``U``, ``V``.

    Returns ``(D, U, V)`` as lists of lists. The diagonal of ``D`` is
    non-negative with ``d_i | d_{i+1}``.
    """
    m = len(B)
    n = ncols
    A = [list(r) for r in B]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for M in (A, V):
            for row in M:
                row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        cand = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not cand:
            break
        _, i, j = min(cand)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            for i in range(t + 1, m):
                q = A[i][t] // A[t][t]
                if q:
                    add_row(i, t, q)
            for j in range(t + 1, n):
                q = A[t][j] // A[t][t]
                if q:
                    add_col(j, t, q)
            rest = [(abs(A[i][t]), i, "r") for i in range(t + 1, m) if A[i][t]]
            rest += [(abs(A[t][j]), j, "c") for j in range(t + 1, n) if A[t][j]]
            if rest:
                _, k, kind = min(rest)
                if kind == "r":
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return A, U, V


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------

class DiscreteGroup:
    """Common interface of the two group backends."""

    generators: tuple

    def identity(self) -> Element:
        raise NotImplementedError

    def mul(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def inv(self, a: Element) -> Element:
        raise NotImplementedError

    def is_element(self, a) -> bool:
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        raise NotImplementedError

    @property
    def is_abelian(self) -> bool:
        raise NotImplementedError

    def elements(self) -> list[Element]:
        raise NotImplementedError

    def parse_element(self, text: str) -> Element:
        raise NotImplementedError

    def format_element(self, a: Element) -> str:
        raise NotImplementedError

    def check(self, *elements) -> None:
        for a in elements:
            if not self.is_element(a):
                raise InputError(f"{a!r} is not an element of {self}")

    def product(self, word: Iterable[Element]) -> Element:
        acc = self.identity()
        for a in word:
            acc = self.mul(acc, a)
        return acc

    def conj(self, g: Element, x: Element) -> Element:
        """``g x g^-1``."""
        return self.mul(self.mul(g, x), self.inv(g))

    def order(self) -> int | None:
        return len(self.elements()) if self.is_finite else None


class FiniteGroup(DiscreteGroup):
    """Permutation group on ``degree`` points generated by ``generators``."""

    def __init__(self, degree: int, generators: Sequence[Sequence[int]], cap: int = DEFAULT_CLOSURE_CAP):
        self.degree = degree
        gens = []
        for g in generators:
            g = tuple(g)
            if sorted(g) != list(range(degree)):
                raise InputError(f"{g!r} is not a permutation of {degree} points")
            gens.append(g)
        self.generators = tuple(gens)
        self.cap = cap
        self._elements = _closure(self, self.generators, cap)
        self._element_set = frozenset(self._elements)

    def __repr__(self):
        gens = ",".join(self.format_element(g) for g in self.generators)
        return f"perm:{gens}" if gens else f"perm[{self.degree}]"

    def identity(self):
        return tuple(range(self.degree))

    def mul(self, a, b):
        return tuple(a[x] for x in b)

    def inv(self, a):
        out = [0] * len(a)
        for i, x in enumerate(a):
            out[x] = i
        return tuple(out)

    def is_element(self, a):
        return a in self._element_set

    @property
    def is_finite(self):
        return True

    @property
    def is_abelian(self):
        gs = self.generators
        return all(self.mul(a, b) == self.mul(b, a) for a in gs for b in gs)

    def elements(self):
        return list(self._elements)

    def parse_element(self, text):
        a = parse_cycles(text, self.degree)
        if not self.is_element(a):
            raise InputError(f"{text!r} is not an element of {self}")
        return a

    def format_element(self, a):
        return format_cycles(a)


class FGAbelian(DiscreteGroup):
    """``Z^rank`` plus the cyclic factors ``Z_k`` listed in ``torsion``."""

    def __init__(self, rank: int = 0, torsion: Sequence[int] = ()):
        if rank < 0 or any(k < 2 for k in torsion):
            raise InputError("abelian group needs rank >= 0 and torsion orders >= 2")
        self.rank = rank
        self.torsion = tuple(torsion)
        n = rank + len(self.torsion)
        self.generators = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    def __repr__(self):
        parts = []
        if self.rank:
            parts.append(f"zrank:{self.rank}")
        if self.torsion:
            parts.append("abelian:" + "x".join(map(str, self.torsion)))
        return "+".join(parts) or "abelian:1"

    def __eq__(self, other):
        return isinstance(other, FGAbelian) and (self.rank, self.torsion) == (other.rank, other.torsion)

    def __hash__(self):
        return hash((self.rank, self.torsion))

    @property
    def ngens(self):
        return self.rank + len(self.torsion)

    def normalize(self, v: Sequence[int]) -> Element:
        v = list(v)
        for i, k in enumerate(self.torsion):
            v[self.rank + i] %= k
        return tuple(v)

    def identity(self):
        return (0,) * self.ngens

    def mul(self, a, b):
        return self.normalize([x + y for x, y in zip(a, b)])

    def inv(self, a):
        return self.normalize([-x for x in a])

    def is_element(self, a):
        return (isinstance(a, tuple) and len(a) == self.ngens
                and all(isinstance(x, int) for x in a)
                and all(0 <= a[self.rank + i] < k for i, k in enumerate(self.torsion)))

    @property
    def is_finite(self):
        return self.rank == 0

    @property
    def is_abelian(self):
        return True

    def elements(self):
        if self.rank:
            raise ResourceError("cannot list the elements of an infinite group")
        return [tuple(v) for v in product(*(range(k) for k in self.torsion))]

    def parse_element(self, text):
        text = text.strip()
        if self.ngens == 1 and re.fullmatch(r"-?\d+", text):
            vals = [int(text)]
        else:
            m = re.fullmatch(r"\((.*)\)", text)
            if not m:
                raise InputError(f"bad abelian element literal {text!r}")
            vals = [int(x) for x in re.split(r"[,\s]+", m.group(1).strip()) if x]
        a = tuple(vals)
        if not self.is_element(a):
            raise InputError(f"{text!r} is not an element of {self} (torsion coordinates must lie in [0, k))")
        return a

    def format_element(self, a):
        if self.ngens == 1:
            return str(a[0])
        return "(" + ",".join(map(str, a)) + ")"


def _closure(G: DiscreteGroup, gens: Iterable[Element], cap: int) -> list[Element]:
    """Sorted element list of the subgroup generated by ``gens``."""
    gens = list(gens)
    e = G.identity()
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = G.mul(g, x)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise ResourceError(f"group closure exceeded {cap} elements")
                queue.append(y)
    return sorted(seen)


# ---------------------------------------------------------------------------
# literals
# ---------------------------------------------------------------------------

def parse_cycles(text: str, degree: int | None = None) -> Element:
    """Parse cycle notation on points ``1..n`` into a 0-based image table."""
    text = text.strip()
    if text in ("", "()", "e", "id"):
        cycles = []
    else:
        if not re.fullmatch(r"(\(\s*\d+(?:[\s,]+\d+)*\s*\))+", text):
            raise InputError(f"bad cycle literal {text!r}")
        cycles = [[int(x) for x in re.split(r"[\s,]+", c.strip())] for c in re.findall(r"\(([^)]*)\)", text)]
    top = max((x for c in cycles for x in c), default=0)
    n = degree if degree is not None else top
    if top > n or any(x < 1 for c in cycles for x in c):
        raise InputError(f"cycle literal {text!r} uses points outside 1..{n}")
    img = list(range(n))
    for c in reversed(cycles):
        if len(set(c)) != len(c):
            raise InputError(f"repeated point in cycle {c}")
        step = {c[i] - 1: c[(i + 1) % len(c)] - 1 for i in range(len(c))}
        img = [step.get(x, x) for x in img]
    return tuple(img)


def format_cycles(a: Element) -> str:
    seen = set()
    out = []
    for i in range(len(a)):
        if i in seen or a[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = a[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = a[j]
        out.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(out) or "()"


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside parentheses/brackets."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_group(spec: str, cap: int = DEFAULT_CLOSURE_CAP) -> DiscreteGroup:
    """Parse ``abelian:4``, ``abelian:2x3``, ``zrank:1``, ``zrank:1+abelian:2``
    or ``perm:(1 2),(1 2 3)``."""
    spec = spec.strip()
    if spec.startswith("perm:"):
        lits = split_top_level(spec[5:])
        cycles = [parse_cycles(t) for t in lits]
        n = max((len(c) for c in cycles), default=1)
        gens = [parse_cycles(t, n) for t in lits]
        return FiniteGroup(n, gens, cap=cap)
    rank, torsion = 0, []
    for part in re.split(r"[+;\s]+", spec):
        if not part:
            continue
        m = re.fullmatch(r"zrank:(\d+)", part)
        if m:
            rank += int(m.group(1))
            continue
        m = re.fullmatch(r"abelian:(\d+(?:x\d+)*)", part)
        if m:
            torsion += [int(k) for k in m.group(1).split("x") if int(k) != 1]
            continue
        raise InputError(f"bad group spec {spec!r}")
    return FGAbelian(rank, torsion)


def parse_elements(G: DiscreteGroup, text: str) -> list[Element]:
    return [G.parse_element(t) for t in split_top_level(text)]


# ---------------------------------------------------------------------------
# subgroups
# ---------------------------------------------------------------------------

class Subgroup:
    """Subgroup of ``parent`` generated by ``generators``.

    Finite parents cache the element set; abelian parents cache a Hermite
    basis of the lattice spanned by the generators and the torsion
    relations.
    """

    def __init__(self, parent: DiscreteGroup, generators: Iterable[Element]):
        self.parent = parent
        self.generators = tuple(generators)
        parent.check(*self.generators)
        if isinstance(parent, FGAbelian):
            n = parent.ngens
            rows = [list(g) for g in self.generators]
            for i, k in enumerate(parent.torsion):
                rows.append([k if j == parent.rank + i else 0 for j in range(n)])
            self._basis = hermite_rows(rows, n)
            self._elements = None
        else:
            self._basis = None
            self._elements = frozenset(_closure(parent, self.generators, getattr(parent, "cap", DEFAULT_CLOSURE_CAP)))

    def __repr__(self):
        gens = ",".join(self.parent.format_element(g) for g in self.generators)
        return f"<{gens}> in {self.parent}"

    def __contains__(self, g):
        return self.contains(g)

    def contains(self, g: Element) -> bool:
        self.parent.check(g)
        if self._elements is not None:
            return g in self._elements
        return not any(lattice_reduce(g, self._basis))

    def elements(self) -> list[Element]:
        if self._elements is not None:
            return sorted(self._elements)
        G = self.parent
        if not G.is_finite:
            # finite subgroups of Z^r x T live in the torsion part
            if any(c < G.rank for _, c in self._basis):
                raise ResourceError("subgroup is infinite")
        return sorted(g for g in G.elements() if self.contains(g)) if G.is_finite else \
            sorted(tuple([0] * G.rank + list(t)) for t in product(*(range(k) for k in G.torsion))
                   if self.contains(tuple([0] * G.rank + list(t))))

    def order(self) -> int:
        return len(self.elements())

    def is_finite(self) -> bool:
        if self._elements is not None:
            return True
        return all(c >= self.parent.rank for _, c in self._basis) if self.parent.rank else True


def trivial_subgroup(G: DiscreteGroup) -> Subgroup:
    return Subgroup(G, [])


def whole_group(G: DiscreteGroup) -> Subgroup:
    return Subgroup(G, G.generators)


def is_normal(L: Subgroup) -> bool:
    """``g λ g^-1 ∈ L`` for all generators ``g`` of the parent and ``λ`` of ``L``."""
    G = L.parent
    if G.is_abelian:
        return True
    return all(L.contains(G.conj(g, x)) for g in G.generators for x in L.generators)


def normal_closure(L: Subgroup) -> Subgroup:
    """Smallest normal subgroup containing ``L`` (saturation under conjugation)."""
    G = L.parent
    if G.is_abelian:
        return L
    gens = list(L.generators)
    H = Subgroup(G, gens)
    while True:
        new = [G.conj(g, x) for g in G.generators for x in gens]
        missing = [y for y in new if not H.contains(y)]
        if not missing:
            return H
        gens.append(missing[0])
        H = Subgroup(G, gens)


def transversal(G: DiscreteGroup, L: Subgroup) -> Callable[[Element], Element]:
    """Return ``rep`` with ``rep(g) L = g L``, choosing lexicographically minimal representatives."""
    if L.parent is not G:
        raise InputError("subgroup belongs to a different group")
    if isinstance(G, FGAbelian):
        basis = L._basis

        def rep(g):
            G.check(g)
            return G.normalize(lattice_reduce(g, basis))
        return rep
    table = {}
    Lel = L.elements()
    for g in G.elements():
        if g in table:
            continue
        for x in Lel:
            table[G.mul(g, x)] = g
    return lambda g: table[g] if g in table else _bad(G, g)


def _bad(G, g):
    raise InputError(f"{g!r} is not an element of {G}")


def quotient(G: DiscreteGroup, L: Subgroup):
    """Model of ``G/L`` and the projection homomorphism.

    Abelian parents go through the Smith normal form of the relation
    lattice; finite parents act on the left cosets of ``L``.
    """
    if L.parent is not G:
        raise InputError("subgroup belongs to a different group")
    if not is_normal(L):
        raise InputError("quotient needs a normal subgroup")
    if isinstance(G, FGAbelian):
        n = G.ngens
        rows = [list(g) for g in L.generators]
        for i, k in enumerate(G.torsion):
            rows.append([k if j == G.rank + i else 0 for j in range(n)])
        D, _, V = smith_normal_form(rows, n)
        diag = [D[i][i] if i < len(D) else 0 for i in range(n)]
        free = [i for i in range(n) if diag[i] == 0]
        tors = [i for i in range(n) if diag[i] > 1]
        Q = FGAbelian(len(free), [diag[i] for i in tors])

        def proj(g):
            G.check(g)
            y = [sum(g[r] * V[r][c] for r in range(n)) for c in range(n)]
            return Q.normalize([y[i] for i in free] + [y[i] for i in tors])
        return Q, proj
    rep = transversal(G, L)
    reps = sorted({rep(g) for g in G.elements()})
    index = {r: i for i, r in enumerate(reps)}

    def proj(g):
        G.check(g)
        return tuple(index[rep(G.mul(g, r))] for r in reps)
    Q = FiniteGroup(len(reps), [proj(g) for g in G.generators])
    cyclic = _as_cyclic(Q)
    if cyclic is None:
        return Q, proj
    Z, log = cyclic
    return Z, lambda g: log[proj(g)]


def _as_cyclic(Q: FiniteGroup):
    """If ``Q`` is cyclic, return ``(Z_n, table)`` identifying it with ``Z_n``."""
    n = len(Q.elements())
    e = Q.identity()
    if n == 1:
        return FGAbelian(0, ()), {e: ()}
    candidates = list(Q.generators) + Q.elements()
    for c in candidates:
        table, x = {}, e
        for i in range(n):
            table[x] = (i,)
            x = Q.mul(x, c)
        if len(table) == n:
            return FGAbelian(0, (n,)), table
    return None


def shortest_factorization(G: DiscreteGroup, letters: Sequence[Element], target: Element,
                           max_len: int = 12, nonempty: bool = True) -> tuple[Element, ...]:
    """Shortest (then lexicographically first) word over ``letters`` multiplying to ``target``.

    Breadth-first search in the Cayley graph.
    """
    letters = sorted(set(letters))
    G.check(target, *letters)
    e = G.identity()
    if target == e and not nonempty:
        return ()
    frontier = {(): e}
    seen = {e} if not nonempty else set()
    for _ in range(max_len):
        nxt = {}
        for word in sorted(frontier):
            x = frontier[word]
            for s in letters:
                y = G.mul(x, s)
                w = word + (s,)
                if y == target:
                    return w
                if y not in seen:
                    seen.add(y)
                    nxt[w] = y
        frontier = nxt
        if not frontier:
            break
    raise ResourceError(f"no factorization of {G.format_element(target)} of length <= {max_len}")


def iter_words(letters: Sequence[Element], length: int) -> Iterator[tuple]:
    return product(sorted(letters), repeat=length)
