"""The Weyl group of E6 as integer matrices on the (1, 6) lattice.

Elements are 7 x 7 integer matrices preserving the diagonal form
diag(1, -1, ..., -1) and fixing the canonical class (-3, 1, ..., 1).  The
group is generated by the six simple reflections and enumerated by a
deterministic breadth-first closure that also records a generator word for
every element, which later feeds the isomorphism verification.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import CapExceeded, NotAMember, WrongOrder
from .lines import CANONICAL_CLASS, J_FORM, pairing

SIMPLE_ROOTS = np.array([
    [0, 1, -1, 0, 0, 0, 0],
    [0, 0, 1, -1, 0, 0, 0],
    [0, 0, 0, 1, -1, 0, 0],
    [0, 0, 0, 0, 1, -1, 0],
    [0, 0, 0, 0, 0, 1, -1],
    [1, -1, -1, -1, 0, 0, 0],
], dtype=np.int64)

WEYL_ORDER = 51840
DEFAULT_CAP = 60000
SUBGROUP_CAP = 1000


def reflection(root: np.ndarray) -> np.ndarray:
    """x -> x + (x, root) root for a root of self-pairing -2."""
    root = np.asarray(root, dtype=np.int64)
    if pairing(root, root) != -2:
        raise ValueError("reflection requires self-pairing -2")
    return np.eye(7, dtype=np.int64) + np.outer(root, J_FORM @ root)


def weyl_generators() -> list[np.ndarray]:
    return [reflection(r) for r in SIMPLE_ROOTS]


def is_lattice_map(m: np.ndarray) -> bool:
    m = np.asarray(m)
    if m.shape != (7, 7) or not np.issubdtype(m.dtype, np.integer):
        return False
    if not np.array_equal(m.T @ J_FORM @ m, J_FORM):
        return False
    return bool(np.array_equal(m @ CANONICAL_CLASS, CANONICAL_CLASS))


def lattice_inverse(m: np.ndarray) -> np.ndarray:
    """Exact inverse of a form-preserving map: J m^T J."""
    return (J_FORM @ m.T @ J_FORM).astype(np.int64)


def _key(m: np.ndarray) -> bytes:
    return np.ascontiguousarray(m, dtype=np.int64).tobytes()


class FiniteMatrixGroup:
    """A finite matrix group enumerated by breadth-first closure.

    elements[0] is the identity; `parents[i]` stores (parent index, generator
    index) so a generator word can be rebuilt for any element; `transitions`
    maps (element, generator) to the product's index, covering every product
    relation the closure discovered.
    """

    def __init__(self, gens: list[np.ndarray], elements: list[np.ndarray],
                 parents: list[tuple[int, int] | None],
                 transitions: np.ndarray):
        self.gens = gens
        self.elements = elements
        self.parents = parents
        self.transitions = transitions
        self.index = {_key(m): i for i, m in enumerate(elements)}
        self._census: dict[int, int] | None = None

    @classmethod
    def close(cls, gens: list[np.ndarray], cap: int = DEFAULT_CAP) -> "FiniteMatrixGroup":
        """Deterministic BFS closure of the generating set, identity first."""
        gens = [np.asarray(g, dtype=np.int64) for g in gens]
        dim = gens[0].shape[0] if gens else 7
        identity = np.eye(dim, dtype=np.int64)
        elements = [identity]
        parents: list[tuple[int, int] | None] = [None]
        index = {_key(identity): 0}
        transitions: list[list[int]] = []
        frontier = [0]
        while frontier:
            new_frontier = []
            for idx in frontier:
                row = []
                for g_idx, g in enumerate(gens):
                    prod = g @ elements[idx]
                    key = _key(prod)
                    at = index.get(key)
                    if at is None:
                        at = len(elements)
                        if at >= cap:
                            raise CapExceeded(f"closure exceeded cap {cap}")
                        elements.append(prod)
                        parents.append((idx, g_idx))
                        index[key] = at
                        new_frontier.append(at)
                    row.append(at)
                transitions.append(row)
            frontier = new_frontier
        # transitions rows were appended in element order because BFS expands
        # every element exactly once, in discovery order
        trans = np.array(transitions, dtype=np.int64) if transitions else \
            np.zeros((1, 0), dtype=np.int64)
        return cls(gens, elements, parents, trans)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, m: np.ndarray) -> bool:
        return _key(np.asarray(m, dtype=np.int64)) in self.index

    def index_of(self, m: np.ndarray) -> int:
        key = _key(np.asarray(m, dtype=np.int64))
        if key not in self.index:
            raise NotAMember("matrix is not in the group")
        return self.index[key]

    def word(self, idx: int) -> list[int]:
        """Generator indices whose left-to-right product is elements[idx]."""
        out: list[int] = []
        while True:
            parent = self.parents[idx]
            if parent is None:
                return out
            idx, g_idx = parent
            # closure builds gen @ parent, so the walk yields leftmost first
            out.append(g_idx)

    def stacked(self) -> np.ndarray:
        return np.stack(self.elements)

    def census(self) -> dict[int, int]:
        """Multiplicative order histogram, computed batched."""
        if self._census is None:
            stack = self.stacked()
            n, dim = stack.shape[0], stack.shape[1]
            identity = np.eye(dim, dtype=np.int64)
            power = stack.copy()
            orders = np.zeros(n, dtype=np.int64)
            for k in range(1, 400):
                hits = np.all(power == identity, axis=(1, 2))
                fresh = hits & (orders == 0)
                orders[fresh] = k
                if np.all(orders > 0):
                    break
                power = np.matmul(power, stack)
            if not np.all(orders > 0):
                raise WrongOrder("an element order exceeded the census bound")
            vals, counts = np.unique(orders, return_counts=True)
            self._census = {int(v): int(c) for v, c in zip(vals, counts)}
        return self._census

    def element_order(self, m: np.ndarray) -> int:
        m = np.asarray(m, dtype=np.int64)
        identity = np.eye(m.shape[0], dtype=np.int64)
        power = m.copy()
        for k in range(1, 400):
            if np.array_equal(power, identity):
                return k
            power = power @ m
        raise WrongOrder("element order exceeded bound")


@lru_cache(maxsize=1)
def weyl_group() -> FiniteMatrixGroup:
    """The full reflection group, 51840 elements, cached per process."""
    group = FiniteMatrixGroup.close(weyl_generators(), cap=DEFAULT_CAP)
    if len(group) != WEYL_ORDER:
        raise WrongOrder(f"reflection closure has {len(group)} elements")
    return group


def conjugacy_class_size(g: np.ndarray, group: FiniteMatrixGroup) -> int:
    """Orbit of g under conjugation by the group's generators."""
    g = np.asarray(g, dtype=np.int64)
    if g not in group:
        raise NotAMember("conjugacy class requested for a non-member")
    seen = {_key(g)}
    frontier = [g]
    gen_pairs = [(s, lattice_inverse(s)) for s in group.gens]
    while frontier:
        nxt = []
        for m in frontier:
            for s, s_inv in gen_pairs:
                c = s @ m @ s_inv
                key = _key(c)
                if key not in seen:
                    seen.add(key)
                    nxt.append(c)
        frontier = nxt
    return len(seen)


def centralizer(g: np.ndarray, group: FiniteMatrixGroup) -> FiniteMatrixGroup:
    """Subgroup of elements commuting with g, with |orbit| * |centralizer|
    cross-checked against the group order."""
    g = np.asarray(g, dtype=np.int64)
    if g not in group:
        raise NotAMember("centralizer requested for a non-member")
    stack = group.stacked()
    left = np.matmul(stack, g)
    right = np.matmul(g, stack)
    hits = np.all(left == right, axis=(1, 2))
    members = [stack[i] for i in np.flatnonzero(hits)]
    sub = regenerate(members)
    orbit = conjugacy_class_size(g, group)
    if orbit * len(sub) != len(group):
        raise WrongOrder("orbit-stabilizer count failed for the centralizer")
    return sub


def regenerate(members: list[np.ndarray]) -> FiniteMatrixGroup:
    """Find a small generating set for a closed member list, then re-close.

    Greedy: keep adjoining the first member not yet generated.  The final
    closure is asserted to reproduce the member set exactly, which certifies
    that the input really was closed.
    """
    target = {_key(m) for m in members}
    gens: list[np.ndarray] = []
    group = FiniteMatrixGroup.close([np.eye(members[0].shape[0], dtype=np.int64)],
                                    cap=len(members) + 1)
    for m in members:
        if m not in group:
            gens.append(m)
            group = FiniteMatrixGroup.close(gens, cap=len(members) + 1)
            if len(group) == len(members):
                break
    if {_key(m) for m in group.elements} != target:
        raise WrongOrder("member list is not closed under multiplication")
    return group


def trace_character_check(g: np.ndarray) -> tuple[int, int]:
    """(matrix trace, reflection-representation character tr - 1)."""
    g = np.asarray(g, dtype=np.int64)
    tr = int(np.trace(g))
    return tr, tr - 1
