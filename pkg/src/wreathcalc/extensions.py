"""Classical amalgamated wreath products and extension data of a subgroup.

* Monomial matrices with k-th roots of unity, stored symbolically by
  exponents mod k, and the amalgamated wreath product ``Z_k ≀_{Z_d} S_N``
  in two models (monomial matrices, semidirect product).
* Normality witnesses, section homomorphisms of ``Γ → Γ/Λ``, the induced
  conjugation action on ``Λ`` and the direct-product decomposition test.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial
from typing import Callable

from .errors import InputError, ResourceError, StructuralError
from .groups import DiscreteGroup, Element, Subgroup, is_normal, quotient

MAX_CLASSICAL_N = 6
MAX_CLASSICAL_K = 12
DEFAULT_ENUMERATION_CAP = 2_000_000


# ---------------------------------------------------------------------------
# monomial matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonomialMatrix:
    """Entry ``(σ(j), j)`` is ``ω^{a_j}`` with ``ω`` a primitive k-th root of unity."""

    k: int
    sigma: tuple
    exponents: tuple

    @property
    def N(self) -> int:
        return len(self.sigma)

    def __post_init__(self):
        if sorted(self.sigma) != list(range(len(self.sigma))) or len(self.exponents) != len(self.sigma):
            raise InputError("monomial matrix needs a permutation and one exponent per column")
        if any(not 0 <= a < self.k for a in self.exponents):
            raise InputError("exponents must lie in [0, k)")

    def __matmul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        if self.k != other.k or self.N != other.N:
            raise InputError("monomial matrices of different shapes")
        sig = tuple(self.sigma[other.sigma[j]] for j in range(self.N))
        exps = tuple((other.exponents[j] + self.exponents[other.sigma[j]]) % self.k for j in range(self.N))
        return MonomialMatrix(self.k, sig, exps)

    def inverse(self) -> "MonomialMatrix":
        inv = [0] * self.N
        for j, i in enumerate(self.sigma):
            inv[i] = j
        exps = tuple((-self.exponents[inv[i]]) % self.k for i in range(self.N))
        return MonomialMatrix(self.k, tuple(inv), exps)

    def dense(self) -> list[list[str]]:
        """Entries as ``w^a`` strings (``0`` for zero entries)."""
        M = [["0"] * self.N for _ in range(self.N)]
        for j, i in enumerate(self.sigma):
            M[i][j] = f"w^{self.exponents[j]}"
        return M


def _check_kd(k: int, d: int) -> None:
    if k < 1 or d < 1 or k % d:
        raise InputError(f"need d | k, got k={k}, d={d}")


def monomial_member(M: MonomialMatrix, k: int, d: int) -> bool:
    """All non-zero entries have the same (k/d)-th power."""
    _check_kd(k, d)
    if M.k != k:
        raise InputError("matrix uses a different k")
    e = k // d
    return len({(e * a) % k for a in M.exponents}) <= 1


@dataclass
class ClassicalModel:
    k: int
    d: int
    N: int
    order: int
    formula_order: int
    matrices: frozenset | None
    semidirect: frozenset | None

    def contains(self, M: MonomialMatrix) -> bool:
        return M.k == self.k and M.N == self.N and monomial_member(M, self.k, self.d)


def _sd_mul(k: int, x, y):
    """``(x, σ)(y, τ) = (x + σ·y, στ)`` with ``(σ·y)_i = y_{σ^{-1}(i)}``."""
    (a, s), (b, t) = x, y
    inv = [0] * len(s)
    for j, i in enumerate(s):
        inv[i] = j
    return (tuple((a[i] + b[inv[i]]) % k for i in range(len(s))), tuple(s[t[j]] for j in range(len(s))))


def semidirect_to_monomial(k: int, x) -> MonomialMatrix:
    """``(x, σ)`` is the matrix ``diag(ω^x) P_σ``."""
    a, s = x
    return MonomialMatrix(k, s, tuple(a[s[j]] for j in range(len(s))))


def build_classical(k: int, d: int, N: int, cap: int = DEFAULT_ENUMERATION_CAP) -> ClassicalModel:
    """Enumerate ``Z_k ≀_{Z_d} S_N`` as monomial matrices and as a semidirect product."""
    _check_kd(k, d)
    if N > MAX_CLASSICAL_N or k > MAX_CLASSICAL_K or N < 1:
        raise ResourceError(f"classical enumeration limited to N <= {MAX_CLASSICAL_N}, k <= {MAX_CLASSICAL_K}")
    formula = k * (k // d) ** (N - 1) * factorial(N)
    if k ** N > cap or formula > cap:
        raise ResourceError(f"enumeration exceeds the cap {cap}")
    perms = list(permutations(range(N)))
    # monomial side: filter every exponent vector by the root-of-unity criterion
    good_exps = [a for a in product(range(k), repeat=N)
                 if monomial_member(MonomialMatrix(k, tuple(range(N)), a), k, d)]
    matrices = frozenset(MonomialMatrix(k, s, a) for s in perms for a in good_exps)
    # semidirect side: vectors whose images in Z_d agree, times all permutations
    vecs = [a for a in product(range(k), repeat=N) if len({x % d for x in a}) <= 1]
    semidirect = frozenset((a, s) for a in vecs for s in perms)
    if len(matrices) != len(semidirect):
        raise StructuralError("the two classical models have different orders")
    if frozenset(semidirect_to_monomial(k, x) for x in semidirect) != matrices:
        raise StructuralError("the semidirect model does not map onto the monomial model")
    return ClassicalModel(k, d, N, len(matrices), formula, matrices, semidirect)


def check_classical_multiplication(model: ClassicalModel, pairs: int = 100, seed: int = 0) -> bool:
    """The correspondence is multiplicative on random pairs."""
    rng = random.Random(seed)
    elems = sorted(model.semidirect)
    for _ in range(pairs):
        x, y = rng.choice(elems), rng.choice(elems)
        lhs = semidirect_to_monomial(model.k, _sd_mul(model.k, x, y))
        rhs = semidirect_to_monomial(model.k, x) @ semidirect_to_monomial(model.k, y)
        if lhs != rhs or lhs not in model.matrices:
            return False
    return True


# ---------------------------------------------------------------------------
# extension data
# ---------------------------------------------------------------------------

def exact_sequence_word_condition(G: DiscreteGroup, L: Subgroup) -> tuple[bool, dict]:
    """For generators ``g`` of Γ and ``λ`` of Λ, the witness ``λ' = g^{-1} λ g`` with ``λg = gλ'``.

    Returns ``(all witnesses lie in Λ, {(g, λ): λ' or None})``.
    """
    if L.parent is not G:
        raise InputError("subgroup belongs to a different group")
    witnesses = {}
    ok = True
    for g in G.generators:
        for lam in L.generators:
            w = G.mul(G.mul(G.inv(g), lam), g)
            if L.contains(w):
                witnesses[(g, lam)] = w
            else:
                witnesses[(g, lam)] = None
                ok = False
    return ok, witnesses


@dataclass
class Splitting:
    quotient: DiscreteGroup
    projection: Callable
    images: dict           # quotient generator -> element of Γ
    table: dict            # every quotient element -> its image

    def __call__(self, q: Element) -> Element:
        return self.table[q]


def _extend_hom(G: DiscreteGroup, Q: DiscreteGroup, images: dict) -> dict | None:
    """Extend generator images to a homomorphism ``Q → G``; None if inconsistent."""
    table = {Q.identity(): G.identity()}
    queue = [Q.identity()]
    while queue:
        q = queue.pop()
        for s, img in images.items():
            r = Q.mul(q, s)
            v = G.mul(table[q], img)
            if r in table:
                if table[r] != v:
                    return None
            else:
                table[r] = v
                queue.append(r)
    return table


def make_splitting(G: DiscreteGroup, L: Subgroup, images: dict) -> Splitting:
    """Splitting from explicit images of the quotient generators (validated)."""
    Q, proj = quotient(G, L)
    table = _extend_hom(G, Q, images)
    if table is None or any(proj(table[q]) != q for q in Q.generators):
        raise InputError("given images do not define a section homomorphism")
    return Splitting(Q, proj, dict(images), table)


def find_splitting(G: DiscreteGroup, L: Subgroup) -> Splitting | None:
    """First section ``ρ: Γ/Λ → Γ`` with ``π∘ρ = id`` (fibres searched in element order)."""
    if not G.is_finite:
        raise InputError("splitting search needs a finite group")
    if not is_normal(L):
        raise InputError("splitting search needs a normal subgroup")
    Q, proj = quotient(G, L)
    gens = list(Q.generators)
    fibres = {q: [g for g in G.elements() if proj(g) == q] for q in gens}
    for choice in product(*(fibres[q] for q in gens)):
        images = dict(zip(gens, choice))
        table = _extend_hom(G, Q, images)
        if table is not None and all(proj(v) == q for q, v in table.items()):
            return Splitting(Q, proj, images, table)
    return None


def measuring_action(G: DiscreteGroup, L: Subgroup, rho: Splitting, q: Element, lam: Element) -> Element:
    """``ρ(q) λ ρ(q)^{-1}``."""
    if not L.contains(lam):
        raise InputError("the action is defined on subgroup elements")
    out = G.conj(rho(q), lam)
    if not L.contains(out):
        raise StructuralError("conjugate left the subgroup")
    return out


def verify_action(G: DiscreteGroup, L: Subgroup, rho: Splitting) -> bool:
    """Identity, composition and automorphism laws, exhaustively."""
    Q = rho.quotient
    Lel = L.elements()
    Qel = Q.elements()
    act = {(q, l): measuring_action(G, L, rho, q, l) for q in Qel for l in Lel}
    e = Q.identity()
    for l in Lel:
        if act[(e, l)] != l:
            return False
    for q in Qel:
        for r in Qel:
            for l in Lel:
                if act[(Q.mul(q, r), l)] != act[(q, act[(r, l)])]:
                    return False
        for l in Lel:
            for m in Lel:
                if act[(q, G.mul(l, m))] != G.mul(act[(q, l)], act[(q, m)]):
                    return False
    return True


def all_subgroups(G: DiscreteGroup, within: list | None = None) -> list[frozenset]:
    """Every subgroup of ``G`` contained in the element list ``within`` (default: all of G)."""
    pool = sorted(within if within is not None else G.elements())
    cyclic = {frozenset(Subgroup(G, [g]).elements()) for g in pool}
    subs = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for H in frontier:
            for C in cyclic:
                if C <= H:
                    continue
                J = frozenset(Subgroup(G, sorted(H | C)).elements())
                if J not in subs and all(x in set(pool) for x in J):
                    new.add(J)
        subs |= new
        frontier = new
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


@dataclass
class DirectProductResult:
    decomposable: bool
    gamma0: list | None
    lambda0: list | None
    centralizer: list


def direct_product_criterion(G: DiscreteGroup, L: Subgroup) -> DirectProductResult:
    """Search for ``Γ_0`` commuting elementwise with Λ, with ``ΛΓ_0 = Γ`` and ``Λ ∩ Γ_0 = {e}``.

    Such a ``Γ_0`` is the image of a splitting commuting with Λ. Subgroups
    are tried by increasing order; ``lambda0`` reports ``Λ ∩ Γ_0``.
    """
    if not G.is_finite:
        raise InputError("direct-product search needs a finite group")
    if not is_normal(L):
        raise InputError("direct-product search needs a normal subgroup")
    Lel = L.elements()
    cent = [g for g in G.elements() if all(G.mul(g, l) == G.mul(l, g) for l in Lel)]
    n = len(G.elements())
    index = n // len(Lel)
    for H in all_subgroups(G, cent):
        if len(H) != index:
            continue
        prod_set = {G.mul(l, h) for l in Lel for h in H}
        if len(prod_set) == n:
            inter = sorted(set(Lel) & H)
            return DirectProductResult(True, sorted(H), inter, cent)
    return DirectProductResult(False, None, None, cent)


def direct_product_fusion_check(cs, L: Subgroup, N: int = 4, bound: int = 6, max_word_len: int = 2) -> tuple[bool, list]:
    """Compare the fusion table with the componentwise table of ``Λ̂ × (quotient side)``.

    Requires a direct decomposition ``Γ = Λ × Γ_0``; each element splits
    as ``λγ`` and ``Higher(g_1..g_n)`` corresponds to
    ``(λ-part of g_1⋯g_n, Higher([g_1]..[g_n]))``.
    """
    from .category import predicate_category
    from .reptheory import RepEngine, RepLabel, build_table

    G = cs.group
    dp = direct_product_criterion(G, L)
    if not dp.decomposable:
        raise InputError("the group is not a direct product of the subgroup and a commuting complement")
    lam_part = {}
    for l in L.elements():
        for h in dp.gamma0:
            lam_part[G.mul(l, h)] = l
    table = build_table(cs, L, N, bound, max_word_len)
    Q, proj = quotient(G, L)
    qeng = RepEngine(Q, Subgroup(Q, []), cs, predicate_category(cs, proj, Q), N, bound, max_word_len, image=proj)
    qtable = qeng.extract()
    e_q = Q.identity()

    def split(lab):
        if lab.kind == "onedim":
            return lab.value, RepLabel.onedim(e_q)
        return lam_part[G.product(lab.value)], RepLabel.higher(tuple(proj(x) for x in lab.value))

    problems = []
    images = {lab: split(lab) for lab in table.labels}
    if len(set(images.values())) != len(images):
        problems.append("label map is not injective")
    for (a, b), dec in table.tensor.items():
        (la, qa), (lb, qb) = images[a], images[b]
        try:
            qdec = qeng.fuse(qtable, qa, qb)
        except ResourceError as exc:
            problems.append(str(exc))
            continue
        lab_ = G.mul(la, lb)
        want = {(lab_, g): m for g, m in qdec.items()}
        got = {}
        for g, m in dec.items():
            got[images[g]] = got.get(images[g], 0) + m
        if want != got:
            problems.append(f"mismatch at {a.format(G)} ⊗ {b.format(G)}")
    return not problems, problems
