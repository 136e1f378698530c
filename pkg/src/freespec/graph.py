"""Exact decision procedure for Reinhardt partitions of labeled dags.

A labeled dag has edges (tail, head, label) with labels 1..g.  The doubled
graph adds every reversed edge; a closed walk is neutral when the signed
count of traversed labels cancels, i.e. its net vector in Z^g is zero.
All cycles are neutral exactly when an integer potential p: V -> Z^g with
p(tail) - p(head) = e_label along every positive edge exists, and the
decision below works entirely over the integers: a spanning forest fixes
p, and each non-tree edge either confirms it or produces a fundamental
cycle with nonzero net vector as a witness.

Given a potential and torus angles theta, the unimodular phases
delta_v = exp(i <p(v), theta>) satisfy delta_tail = gamma_label * delta_head
on every positive edge, which is what the diagonal symmetry unitary of the
pencil layer is assembled from.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    AntiparallelPairError,
    DuplicateEdgeError,
    LimitExceededError,
    NotAWalkError,
    SelfLoopError,
)

__all__ = [
    "CycleWitness",
    "LabeledDag",
    "PhaseAssignment",
    "Potential",
    "ReinhardtDecision",
    "TorusPoint",
    "check_dag",
    "compute_potential",
    "cycle_net_vector",
    "enumerate_cycles",
    "is_reinhardt_partition",
    "phase_assignment",
    "remove_vertex",
    "sample_independent_torus",
]

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class LabeledDag:
    """Vertices 0..m-1 and labeled directed edges (tail, head, label).

    Construction rejects self loops, duplicate (tail, head) pairs, and
    antiparallel pairs; each of these makes a Reinhardt partition
    impossible, so they are structural errors rather than results.
    """

    num_vertices: int
    num_labels: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        m, g = self.num_vertices, self.num_labels
        if m < 1:
            raise ValueError("num_vertices must be positive")
        if g < 1:
            raise ValueError("num_labels must be positive")
        seen: set[tuple[int, int]] = set()
        normalized = []
        for e in self.edges:
            tail, head, label = (int(x) for x in e)
            if not (0 <= tail < m and 0 <= head < m):
                raise ValueError(f"edge ({tail}, {head}) out of vertex range 0..{m - 1}")
            if not (1 <= label <= g):
                raise ValueError(f"label {label} out of range 1..{g}")
            if tail == head:
                raise SelfLoopError(tail, label)
            if (tail, head) in seen:
                raise DuplicateEdgeError(tail, head)
            if (head, tail) in seen:
                raise AntiparallelPairError(head, tail)
            seen.add((tail, head))
            normalized.append((tail, head, label))
        object.__setattr__(self, "edges", tuple(normalized))

    def positive_map(self) -> dict[tuple[int, int], int]:
        """(tail, head) -> label for the positive edge set."""
        return {(t, h): s for t, h, s in self.edges}

    def undirected_adjacency(self) -> list[list[tuple[int, int, int]]]:
        """Per vertex, sorted (neighbor, label, sign) over the doubled graph.

        sign +1 means the positive edge points away from the vertex.
        """
        adj: list[list[tuple[int, int, int]]] = [[] for _ in range(self.num_vertices)]
        for t, h, s in self.edges:
            adj[t].append((h, s, +1))
            adj[h].append((t, s, -1))
        for lst in adj:
            lst.sort()
        return adj


@dataclass(frozen=True)
class CycleWitness:
    """A closed walk (first vertex repeated last) with its net vector."""

    vertices: tuple[int, ...]
    net_vector: np.ndarray

    def __post_init__(self):
        v = tuple(int(x) for x in self.vertices)
        if len(v) < 3 or v[0] != v[-1]:
            raise ValueError("witness walk must be closed and nontrivial")
        net = np.array(self.net_vector, dtype=np.int64)
        net.flags.writeable = False
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "net_vector", net)

    @property
    def is_neutral(self) -> bool:
        return not self.net_vector.any()


@dataclass(frozen=True)
class Potential:
    """Integer vertex potentials, one vector in Z^g per vertex.

    Each connected component is anchored at zero on its root, and
    p(tail) - p(head) = e_label holds along every positive edge.
    """

    vectors: np.ndarray
    num_labels: int

    def __post_init__(self):
        v = np.array(self.vectors, dtype=np.int64)
        if v.ndim != 2 or v.shape[1] != self.num_labels:
            raise ValueError("potential must have shape (num_vertices, num_labels)")
        v.flags.writeable = False
        object.__setattr__(self, "vectors", v)


@dataclass(frozen=True)
class TorusPoint:
    """A point of the g-torus, stored as angles mod 2*pi."""

    angles: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.angles, dtype=np.float64)
        if a.ndim != 1 or a.size == 0:
            raise ValueError("angles must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(a)):
            raise ValueError("angles must be finite")
        a = np.mod(a, TWO_PI)
        a.flags.writeable = False
        object.__setattr__(self, "angles", a)

    @property
    def g(self) -> int:
        return self.angles.size

    def values(self) -> np.ndarray:
        """The unimodular coordinates exp(i * angles)."""
        return np.exp(1j * self.angles)


@dataclass(frozen=True)
class PhaseAssignment:
    """Unit scalars per vertex satisfying delta_tail = gamma_label * delta_head."""

    delta: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.delta, dtype=np.complex128)
        if np.any(np.abs(np.abs(d) - 1.0) > 1e-12):
            raise ValueError("phases must be unimodular")
        d.flags.writeable = False
        object.__setattr__(self, "delta", d)


@dataclass(frozen=True)
class ReinhardtDecision:
    """Outcome of the exact Reinhardt-partition test with its certificate."""

    is_reinhardt: bool
    order: tuple[int, ...] | None
    potential: Potential | None
    witness: CycleWitness | None


def check_dag(G: LabeledDag):
    """Topological order of the positive edges, or a directed cycle.

    Returns a list of vertices (Kahn's algorithm, lowest index first) or a
    CycleWitness traversing a directed cycle forward.
    """
    m = G.num_vertices
    succ: list[list[int]] = [[] for _ in range(m)]
    indeg = [0] * m
    for t, h, _ in G.edges:
        succ[t].append(h)
        indeg[h] += 1
    for lst in succ:
        lst.sort()
    heap = [v for v in range(m) if indeg[v] == 0]
    heapq.heapify(heap)
    order: list[int] = []
    indeg = list(indeg)
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) == m:
        return order
    remaining = set(range(m)) - set(order)
    pred: list[list[int]] = [[] for _ in range(m)]
    for t, h, _ in G.edges:
        if t in remaining and h in remaining:
            pred[h].append(t)
    for lst in pred:
        lst.sort()
    # every remaining vertex keeps a remaining predecessor, so walking
    # predecessors must revisit a vertex; reversing gives a forward cycle
    walk = [min(remaining)]
    position = {walk[0]: 0}
    while True:
        nxt = pred[walk[-1]][0]
        if nxt in position:
            cycle = [nxt] + walk[position[nxt]:][::-1]
            return CycleWitness(tuple(cycle), cycle_net_vector(G, cycle))
        position[nxt] = len(walk)
        walk.append(nxt)


def cycle_net_vector(G: LabeledDag, walk: Sequence[int]) -> np.ndarray:
    """Signed label count of a closed walk: +e_label per forward step,
    -e_label per reversed step."""
    walk = [int(v) for v in walk]
    if len(walk) < 2 or walk[0] != walk[-1]:
        raise NotAWalkError("walk must be closed (first vertex repeated last)")
    pos = G.positive_map()
    net = np.zeros(G.num_labels, dtype=np.int64)
    for a, b in zip(walk, walk[1:]):
        if (a, b) in pos:
            net[pos[(a, b)] - 1] += 1
        elif (b, a) in pos:
            net[pos[(b, a)] - 1] -= 1
        else:
            raise NotAWalkError(f"no edge between {a} and {b}")
    return net


def _components(adj: list[list[tuple[int, int, int]]]) -> list[list[int]]:
    m = len(adj)
    seen = [False] * m
    comps = []
    for root in range(m):
        if seen[root]:
            continue
        comp = [root]
        seen[root] = True
        queue = [root]
        while queue:
            v = queue.pop(0)
            for w, _, _ in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def _tree_path(parent: list[int], a: int, b: int) -> list[int]:
    """Path a -> b inside the BFS forest (both in the same component)."""
    up_a = [a]
    while parent[up_a[-1]] >= 0:
        up_a.append(parent[up_a[-1]])
    index_a = {v: i for i, v in enumerate(up_a)}
    up_b = [b]
    while up_b[-1] not in index_a:
        up_b.append(parent[up_b[-1]])
    meet = up_b[-1]
    return up_a[: index_a[meet] + 1] + up_b[-2::-1]


def compute_potential(G: LabeledDag):
    """Integer potential certifying that all cycles are neutral, or a
    fundamental cycle with nonzero net vector.

    Each component is rooted at its lowest-numbered sink (falling back to
    its lowest vertex when the positive edges contain a directed cycle),
    so terminal vertices carry potential zero.
    """
    m, g = G.num_vertices, G.num_labels
    adj = G.undirected_adjacency()
    out_deg = [0] * m
    for t, _, _ in G.edges:
        out_deg[t] += 1
    p = np.zeros((m, g), dtype=np.int64)
    parent = [-1] * m
    in_tree = set()
    for comp in _components(adj):
        sinks = [v for v in comp if out_deg[v] == 0]
        root = min(sinks) if sinks else min(comp)
        seen = {root}
        queue = [root]
        while queue:
            v = queue.pop(0)
            for w, s, sign in adj[v]:
                if w in seen:
                    continue
                seen.add(w)
                p[w] = p[v]
                p[w][s - 1] -= sign
                parent[w] = v
                in_tree.add((v, w) if sign > 0 else (w, v))
                queue.append(w)
    for t, h, s in G.edges:
        if (t, h) in in_tree:
            continue
        expected = np.zeros(g, dtype=np.int64)
        expected[s - 1] = 1
        if np.array_equal(p[t] - p[h], expected):
            continue
        walk = [t] + _tree_path(parent, h, t)
        return CycleWitness(tuple(walk), cycle_net_vector(G, walk))
    return Potential(p, g)


def is_reinhardt_partition(G: LabeledDag) -> ReinhardtDecision:
    """Decide whether the labeling is a Reinhardt partition.

    Yes requires both a topological order of the positive edges and an
    integer potential; the pair is the certificate.  Otherwise the first
    offending cycle is returned as witness.
    """
    ordered = check_dag(G)
    if isinstance(ordered, CycleWitness):
        return ReinhardtDecision(False, None, None, ordered)
    pot = compute_potential(G)
    if isinstance(pot, CycleWitness):
        return ReinhardtDecision(False, None, None, pot)
    return ReinhardtDecision(True, tuple(ordered), pot, None)


def phase_assignment(pot: Potential, gamma: TorusPoint) -> PhaseAssignment:
    """Phases delta_v = exp(i <p(v), theta>) induced by a potential."""
    if gamma.g != pot.num_labels:
        raise ValueError(f"need {pot.num_labels} angles, got {gamma.g}")
    phases = np.exp(1j * (pot.vectors @ gamma.angles))
    return PhaseAssignment(phases)


def _first_primes(count: int) -> list[int]:
    primes: list[int] = []
    candidate = 2
    while len(primes) < count:
        if all(candidate % q for q in primes):
            primes.append(candidate)
        candidate += 1
    return primes


def sample_independent_torus(g: int, seed: int) -> TorusPoint:
    """A reproducible torus point with no small integer relations.

    Angles are 2*pi*frac(sqrt(prime_s) * u) for the first g primes and a
    seed-derived multiplier u in (1, 2).  True independence is not
    representable in floating point; this is approximate independence,
    good enough that small-relation searches come up empty.
    """
    if g < 1:
        raise ValueError("g must be positive")
    rng = np.random.default_rng(seed)
    u = 1.0 + rng.random()
    roots = np.sqrt(np.array(_first_primes(g), dtype=np.float64))
    fractional = np.modf(roots * u)[0]
    return TorusPoint(TWO_PI * fractional)


def enumerate_cycles(G: LabeledDag, max_len: int) -> list[CycleWitness]:
    """All simple cycles of the doubled graph up to max_len edges.

    Each undirected simple cycle is reported once, rooted at its smallest
    vertex and oriented toward its smaller neighbor.  Backtrack walks of
    length two are never reported (they are neutral by construction).
    """
    if max_len > 12:
        raise LimitExceededError(f"max_len {max_len} exceeds the enumeration guard 12")
    neighbors: list[list[int]] = [[] for _ in range(G.num_vertices)]
    for t, h, _ in G.edges:
        neighbors[t].append(h)
        neighbors[h].append(t)
    for lst in neighbors:
        lst.sort()
    cycles: list[CycleWitness] = []

    def extend(root: int, path: list[int], on_path: set[int]):
        v = path[-1]
        for w in neighbors[v]:
            if w == root and len(path) >= 3 and path[1] < path[-1]:
                walk = path + [root]
                cycles.append(CycleWitness(tuple(walk), cycle_net_vector(G, walk)))
            elif w > root and w not in on_path and len(path) < max_len:
                on_path.add(w)
                extend(root, path + [w], on_path)
                on_path.remove(w)

    for root in range(G.num_vertices):
        extend(root, [root], {root})
    return cycles


def remove_vertex(G: LabeledDag, u: int) -> LabeledDag:
    """Drop vertex u and all incident edges, renumbering the rest densely."""
    if not (0 <= u < G.num_vertices):
        raise ValueError(f"vertex {u} out of range")
    if G.num_vertices == 1:
        raise ValueError("cannot remove the only vertex")

    def shift(v: int) -> int:
        return v if v < u else v - 1

    edges = tuple(
        (shift(t), shift(h), s) for t, h, s in G.edges if t != u and h != u
    )
    return LabeledDag(G.num_vertices - 1, G.num_labels, edges)
