"""Finite models: Heisenberg group mod 3, SL2 mod 3, and their semidirect product.

Heisenberg elements are (a, b, c) triples encoding the upper unitriangular
matrix with a above the diagonal left, b above right, c in the corner, so

    (a1, b1, c1) * (a2, b2, c2) = (a1+a2, b1+b2, c1+c2 + a1*b2)   (mod 3).

SL2 elements act on the (a, b) data linearly.  That bare action is exactly
what `phi_action` exposes; note that it is a group action on the data but
not an automorphism of the Heisenberg multiplication, because the cocycle
a1*b2 is only symplectically invariant up to a quadratic correction on the
center coordinate.  The semidirect model therefore uses the corrected
automorphisms: the canonical quadratic twist composed with an inner twist
chosen once so that the standard generator relations hold verbatim.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import NotIsomorphic, NotASubgroup, WrongOrder
from .weyl import FiniteMatrixGroup, lattice_inverse, regenerate

Heis = tuple[int, int, int]
SL2 = tuple[int, int, int, int]

H_IDENTITY: Heis = (0, 0, 0)
SL2_IDENTITY: SL2 = (1, 0, 0, 1)

GEN_M: SL2 = (1, 0, 1, 1)
GEN_N: SL2 = (1, 2, 0, 1)

HEISENBERG_ALL: list[Heis] = [(a, b, c) for a in range(3) for b in range(3)
                              for c in range(3)]
SL2_ALL: list[SL2] = [
    (m00, m01, m10, m11)
    for m00 in range(3) for m01 in range(3)
    for m10 in range(3) for m11 in range(3)
    if (m00 * m11 - m01 * m10) % 3 == 1
]


def h_mul(x: Heis, y: Heis) -> Heis:
    return ((x[0] + y[0]) % 3, (x[1] + y[1]) % 3,
            (x[2] + y[2] + x[0] * y[1]) % 3)


def h_inv(x: Heis) -> Heis:
    a, b, c = x
    return ((-a) % 3, (-b) % 3, (-c + a * b) % 3)


def sl2_mul(x: SL2, y: SL2) -> SL2:
    return ((x[0] * y[0] + x[1] * y[2]) % 3,
            (x[0] * y[1] + x[1] * y[3]) % 3,
            (x[2] * y[0] + x[3] * y[2]) % 3,
            (x[2] * y[1] + x[3] * y[3]) % 3)


def sl2_inv(x: SL2) -> SL2:
    # det is 1, so the adjugate is the inverse
    return (x[3] % 3, (-x[1]) % 3, (-x[2]) % 3, x[0] % 3)


def phi_action(m: SL2, h: Heis) -> Heis:
    """The bare linear action: (a, b) -> m (a, b), center coordinate kept."""
    a, b, c = h
    return ((m[0] * a + m[1] * b) % 3, (m[2] * a + m[3] * b) % 3, c)


def _canonical_aut(m: SL2, h: Heis) -> Heis:
    """Automorphism lift of the linear action via the quadratic twist.

    The twist q_m(v) = 2 ((m v)_1 (m v)_2 - v_1 v_2) repairs the cocycle, and
    m -> psi_m is a genuine homomorphism into Aut(Heis).
    """
    a, b, c = h
    na, nb = (m[0] * a + m[1] * b) % 3, (m[2] * a + m[3] * b) % 3
    q = (2 * (na * nb - a * b)) % 3
    return (na, nb, (c + q) % 3)


def _symp(u: tuple[int, int], v: tuple[int, int]) -> int:
    return (u[0] * v[1] - u[1] * v[0]) % 3


# Splitting of the SL2 factor inside the canonically twisted product: the
# generators must carry these Heisenberg parts for the standard conjugation
# relations to come out with trivial-part SL2 generators in the final model.
_SPLIT_M: Heis = (0, 2, 0)
_SPLIT_N: Heis = (2, 0, 0)


def _psi_pair_mul(p, q):
    (h1, g1), (h2, g2) = p, q
    return (h_mul(h1, _canonical_aut(g1, h2)), sl2_mul(g1, g2))


@lru_cache(maxsize=1)
def _corrected_action() -> dict[SL2, dict[Heis, Heis]]:
    """Action table g -> (h -> h') used by the semidirect product.

    Built by closing the split generators ((0,2,0), M) and ((2,0,0), N) in
    the canonically twisted product; the closure must hit each SL2 part
    exactly once (a true splitting), and conjugating the Heisenberg factor
    through those representatives gives the corrected automorphisms.
    """
    seeds = [(_SPLIT_M, GEN_M), (_SPLIT_N, GEN_N)]
    seen = {((0, 0, 0), SL2_IDENTITY)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for s in seeds:
                q = _psi_pair_mul(p, s)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    if len(seen) != 24:
        raise WrongOrder(f"splitting closure has {len(seen)} elements, not 24")
    parts = {g: h for h, g in seen}
    if len(parts) != 24:
        raise WrongOrder("splitting hits some SL2 part twice")
    table: dict[SL2, dict[Heis, Heis]] = {}
    for g, hs in parts.items():
        row = {}
        for h in HEISENBERG_ALL:
            row[h] = h_mul(h_mul(hs, _canonical_aut(g, h)), h_inv(hs))
        table[g] = row
    return table


def corrected_action(m: SL2, h: Heis) -> Heis:
    return _corrected_action()[m][h]


ModelElement = tuple[Heis, SL2]

MODEL_IDENTITY: ModelElement = (H_IDENTITY, SL2_IDENTITY)


class SemidirectGroup:
    """All 648 pairs (h, g) under the corrected twisted multiplication."""

    def __init__(self):
        self.elements: list[ModelElement] = [
            (h, g) for h in HEISENBERG_ALL for g in SL2_ALL
        ]
        self._act = _corrected_action()

    def mul(self, p: ModelElement, q: ModelElement) -> ModelElement:
        (h1, g1), (h2, g2) = p, q
        return (h_mul(h1, self._act[g1][h2]), sl2_mul(g1, g2))

    def inv(self, p: ModelElement) -> ModelElement:
        h, g = p
        gi = sl2_inv(g)
        return (h_inv(self._act[gi][h]), gi)

    def __len__(self) -> int:
        return len(self.elements)

    def order_of(self, p: ModelElement) -> int:
        acc = p
        for k in range(1, 200):
            if acc == MODEL_IDENTITY:
                return k
            acc = self.mul(acc, p)
        raise WrongOrder("model element order exceeded bound")

    def census(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.elements:
            k = self.order_of(p)
            out[k] = out.get(k, 0) + 1
        return out

    def center(self) -> list[ModelElement]:
        probes = self.generator_images()
        out = []
        for p in self.elements:
            if all(self.mul(p, q) == self.mul(q, p) for q in probes):
                out.append(p)
        return out

    @staticmethod
    def generator_images() -> list[ModelElement]:
        """Model images of the four standard generators, in order.

        The two Heisenberg generators carry center coordinate 1; the two SL2
        generators sit in the split copy with trivial Heisenberg part.
        """
        return [
            ((1, 0, 1), SL2_IDENTITY),
            ((0, 1, 1), SL2_IDENTITY),
            (H_IDENTITY, GEN_M),
            (H_IDENTITY, GEN_N),
        ]

    def spot_check_associativity(self, trials: int = 1000, seed: int = 0) -> None:
        rng = random.Random(seed)
        for _ in range(trials):
            x, y, z = (rng.choice(self.elements) for _ in range(3))
            if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)):
                raise WrongOrder(f"associativity fails on {x}, {y}, {z}")


@lru_cache(maxsize=1)
def semidirect_model() -> SemidirectGroup:
    model = SemidirectGroup()
    model.spot_check_associativity()
    return model


class TupleGroup:
    """BFS closure over hashable elements; mirrors FiniteMatrixGroup's shape."""

    def __init__(self, gens, elements, parents, transitions, index):
        self.gens = gens
        self.elements = elements
        self.parents = parents
        self.transitions = transitions
        self.index = index

    @classmethod
    def close(cls, gens: list, mul, identity, cap: int = 2000) -> "TupleGroup":
        elements = [identity]
        parents: list[tuple[int, int] | None] = [None]
        index = {identity: 0}
        transitions: list[list[int]] = []
        frontier = [0]
        while frontier:
            nxt = []
            for idx in frontier:
                row = []
                for g_idx, g in enumerate(gens):
                    prod = mul(g, elements[idx])
                    at = index.get(prod)
                    if at is None:
                        at = len(elements)
                        if at >= cap:
                            raise WrongOrder(f"tuple closure exceeded cap {cap}")
                        elements.append(prod)
                        parents.append((idx, g_idx))
                        index[prod] = at
                        nxt.append(at)
                    row.append(at)
                transitions.append(row)
            frontier = nxt
        return cls(gens, elements, parents, transitions, index)

    def __len__(self):
        return len(self.elements)

    def word(self, idx: int) -> list[int]:
        out: list[int] = []
        while True:
            parent = self.parents[idx]
            if parent is None:
                return out
            idx, g_idx = parent
            # closure builds gen * parent, so the walk yields leftmost first
            out.append(g_idx)


def verify_generator_map(source, images: list[ModelElement],
                         model: SemidirectGroup) -> dict[int, ModelElement]:
    """Extend a generator assignment along the closure and certify it.

    source must expose elements, transitions and word() the way the closure
    classes here do, with source.transitions[i][j] indexing the product
    (generator j) * (element i).  Every one of those product relations is
    replayed in the model; any mismatch raises NotIsomorphic with the word
    of the offending element as a witness.  The verified extension is also
    required to be a bijection onto the model.
    """
    n = len(source.elements)
    if n != len(model):
        raise WrongOrder(f"source order {n} != model order {len(model)}")
    if len(images) != len(source.gens):
        raise ValueError("need one model image per source generator")
    imgs: list[ModelElement | None] = [None] * n
    imgs[0] = MODEL_IDENTITY
    for i in range(n):
        if imgs[i] is None:
            raise NotIsomorphic(f"element {i} unreachable before use")
        for j in range(len(images)):
            t = int(source.transitions[i][j])
            cand = model.mul(images[j], imgs[i])
            if imgs[t] is None:
                imgs[t] = cand
            elif imgs[t] != cand:
                raise NotIsomorphic(
                    f"word {source.word(t)} has two images; "
                    f"{imgs[t]} vs {cand}")
    if len(set(imgs)) != n:
        raise NotIsomorphic("extension is not injective")
    return {i: p for i, p in enumerate(imgs)}


def verify_isomorphism(group: FiniteMatrixGroup,
                       images: list[ModelElement] | None = None) -> dict[int, ModelElement]:
    """Certify that a 648-element matrix group is the semidirect model.

    The group must come as a closure over four generators matching the
    standard ones (two Heisenberg-type, two SL2-type); images defaults to
    the standard generator assignment.
    """
    if len(group) != 648:
        raise WrongOrder(f"group has order {len(group)}, expected 648")
    model = semidirect_model()
    if images is None:
        images = model.generator_images()
    return verify_generator_map(group, images, model)


def intersect(a: FiniteMatrixGroup, b: FiniteMatrixGroup) -> FiniteMatrixGroup:
    """Intersection of two matrix groups, re-verified closed."""
    keys_b = set(b.index)
    members = [m for m, k in zip(a.elements, a.index) if k in keys_b]
    return regenerate(members)


def is_normal(sub: FiniteMatrixGroup, ambient: FiniteMatrixGroup) -> bool:
    for m in sub.elements:
        if m not in ambient:
            raise NotASubgroup("claimed subgroup is not contained in the group")
    for g in ambient.gens:
        g_inv = lattice_inverse(g)
        for h in sub.elements:
            if (g @ h @ g_inv) not in sub:
                return False
    return True


def conjugation_relations(h1, h2, g1, g2, omega) -> list[dict]:
    """The four standard conjugation relations, checked exactly."""
    inv = lattice_inverse
    checks = [
        ("g1 h1 g1^-1 = omega h1 h2", g1 @ h1 @ inv(g1), omega @ h1 @ h2),
        ("g2 h1 g2^-1 = h1", g2 @ h1 @ inv(g2), h1),
        ("g1 h2 g1^-1 = h2", g1 @ h2 @ inv(g1), h2),
        ("g2 h2 g2^-1 = omega^-1 h1^-1 h2", g2 @ h2 @ inv(g2),
         inv(omega) @ inv(h1) @ h2),
    ]
    return [
        {"relation": name, "holds": bool(np.array_equal(got, want))}
        for name, got, want in checks
    ]


def conjugation_relation_variant(h1, h2, g1, g2,
                                 center_elements: list[np.ndarray]) -> dict | None:
    """Search the convention ambiguities for a variant making all four hold.

    Pipeline generators are only pinned down up to the deck direction (the
    central element vs its inverse), loop orientation (each g vs its
    inverse), and which tracked loop plays which role (the pair swap).
    Returns a description of the first matching variant, or None.
    """
    inv = lattice_inverse
    for swap, inv1, inv2, z in product((False, True), (False, True),
                                       (False, True), range(len(center_elements))):
        ha, hb = (h2, h1) if swap else (h1, h2)
        ga = inv(g1) if inv1 else g1
        gb = inv(g2) if inv2 else g2
        if swap:
            ga, gb = gb, ga
        zc = center_elements[z]
        rel = conjugation_relations(ha, hb, ga, gb, zc)
        if all(r["holds"] for r in rel):
            return {"swap": swap, "invert_g1": inv1, "invert_g2": inv2,
                    "central_index": z, "relations": rel}
    return None


def identify_order24(group: FiniteMatrixGroup) -> str:
    """Name an order-24 group from its order census and Sylow data.

    The intended hit is SL2 over the field of three elements: non-abelian,
    more than one 3-Sylow, and both an order-4 and an order-6 element.  The
    two classical look-alikes are separated by which of those orders occur.
    """
    if len(group) != 24:
        raise WrongOrder(f"group has order {len(group)}, expected 24")
    census = group.census()
    abelian = all(
        np.array_equal(x @ y, y @ x)
        for i, x in enumerate(group.gens) for y in group.gens[i + 1:]
    )
    if abelian:
        return "abelian"
    if census.get(3, 0) == 2:
        return "normal 3-Sylow"
    has4 = census.get(4, 0) > 0
    has6 = census.get(6, 0) > 0
    if has4 and has6:
        return "SL2(F3)"
    if has4:
        return "S4"
    if has6:
        return "A4 x C2"
    return "unrecognized"
