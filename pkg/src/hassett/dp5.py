"""The ten boundary curves of M_{0,5} and the surfaces obtained by contracting them.

``M_{0,5}`` is the degree 5 del Pezzo surface; its ten (-1)-curves are the
boundary divisors ``D_I`` for 2-subsets ``I``, meeting exactly when disjoint
(the Petersen graph).  A chamber contracts the pairwise-intersecting family
``D(a)``, leaving a del Pezzo surface of degree ``5 + d(a)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .chambers import Chamber, enumerate_chambers, type_of
from .intersection import BoundaryIndex, boundary, boundary_indices

# number of (-1)-curves by degree; "8a" is P1 x P1, "8b" is F1
MINUS_ONE_CURVES = {"9": 0, "8a": 0, "8b": 1, "7": 3, "6": 6, "5": 10, "4": 16, "3": 27, "2": 56, "1": 240}

F1 = "F1"
P1xP1 = "P1xP1"


class InfeasiblePlanError(ValueError):
    """Raised for a contraction set that is not the D-set of any chamber."""


@dataclass(frozen=True)
class IntersectionGraph:
    vertices: tuple[BoundaryIndex, ...]
    adjacency: dict

    def neighbors(self, v: BoundaryIndex) -> frozenset[BoundaryIndex]:
        return self.adjacency[v]

    def degree_sequence(self) -> list[int]:
        return [len(self.adjacency[v]) for v in self.vertices]

    def girth(self) -> int:
        best = None
        for root in self.vertices:
            dist = {root: 0}
            parent = {root: None}
            queue = deque([root])
            while queue:
                u = queue.popleft()
                for w in sorted(self.adjacency[u]):
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        queue.append(w)
                    elif parent[u] != w:
                        cycle = dist[u] + dist[w] + 1
                        best = cycle if best is None else min(best, cycle)
        return best if best is not None else 0

    def edges(self) -> list[tuple[BoundaryIndex, BoundaryIndex]]:
        return [(u, v) for u, v in combinations(self.vertices, 2) if v in self.adjacency[u]]


@lru_cache(maxsize=None)
def petersen_graph() -> IntersectionGraph:
    """Boundary curves of M_{0,5}; ``D_I`` meets ``D_J`` iff ``I`` and ``J`` are disjoint."""
    vertices = boundary_indices(5)
    adjacency = {u: frozenset(v for v in vertices if not set(u.subset) & set(v.subset)) for u in vertices}
    graph = IntersectionGraph(vertices, adjacency)
    if len(vertices) != 10 or set(graph.degree_sequence()) != {3} or graph.girth() != 5:
        raise AssertionError("boundary intersection graph is not the Petersen graph")
    return graph


@lru_cache(maxsize=None)
def feasible_plans() -> frozenset[frozenset[BoundaryIndex]]:
    return frozenset(_plan_key(c.d_set) for c in enumerate_chambers(5))


def _plan_key(d_set: Iterable[Iterable[int]]) -> frozenset[BoundaryIndex]:
    return frozenset(i if isinstance(i, BoundaryIndex) else boundary(5, i) for i in d_set)


@dataclass(frozen=True)
class ContractionPlan:
    contracted: frozenset[BoundaryIndex]

    def __post_init__(self):
        key = _plan_key(self.contracted)
        if key not in feasible_plans():
            raise InfeasiblePlanError(f"{sorted(str(i) for i in key)} is not the D-set of any chamber")
        object.__setattr__(self, "contracted", key)

    @classmethod
    def of(cls, chamber: Chamber) -> ContractionPlan:
        return cls(_plan_key(chamber.d_set))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable[int]]) -> ContractionPlan:
        return cls(_plan_key(pairs))

    def sorted(self) -> list[BoundaryIndex]:
        return sorted(self.contracted)


def surviving_minus_one_curves(plan: ContractionPlan) -> tuple[BoundaryIndex, ...]:
    """Non-contracted curves whose image is still a (-1)-curve.

    Contracting disjoint (-1)-curves raises the self-intersection of ``D_J`` by
    ``(D_J . D_I)^2`` for each contracted ``D_I``; so ``D_J`` survives exactly
    when it meets none of them.
    """
    graph = petersen_graph()
    out = []
    for j in graph.vertices:
        if j in plan.contracted:
            continue
        self_int = -1 + sum(1 for i in plan.contracted if i in graph.neighbors(j))
        if self_int == -1:
            out.append(j)
    return tuple(out)


@dataclass(frozen=True)
class SurfaceIdentification:
    degree: int
    deg8_kind: str | None
    minus_one_count: int

    @property
    def table_key(self) -> str:
        if self.degree == 8:
            return "8a" if self.deg8_kind == P1xP1 else "8b"
        return str(self.degree)

    def label(self) -> str:
        return f"dP{self.degree}" + (f" {self.deg8_kind}" if self.deg8_kind else "")


def identify_surface(chamber: Chamber) -> SurfaceIdentification:
    if chamber.n != 5:
        raise ValueError("surface identification is defined for n = 5 only")
    plan = ContractionPlan.of(chamber)
    degree = 5 + len(plan.contracted)
    kind = {"D": F1, "E": P1xP1}.get(type_of(chamber))
    count = len(surviving_minus_one_curves(plan))
    ident = SurfaceIdentification(degree, kind, count)
    if MINUS_ONE_CURVES[ident.table_key] != count:
        raise AssertionError(
            f"chamber {chamber.id}: {count} surviving curves, table gives {MINUS_ONE_CURVES[ident.table_key]}"
        )
    return ident


class Relation(str, Enum):
    EQUAL = "equal"
    GREATER = ">"  # a reduces to b: D(a) is a proper subset of D(b)
    LESS = "<"
    INCOMPARABLE = "incomparable"


def reduction_order(a: Chamber, b: Chamber) -> Relation:
    """Compare two n = 5 chambers by inclusion of their D-sets (``a >= b`` iff ``D(a) <= D(b)``)."""
    if a.n != 5 or b.n != 5:
        raise ValueError("reduction order is defined for n = 5 chambers")
    if a.d_set == b.d_set:
        return Relation.EQUAL
    if a.d_set < b.d_set:
        return Relation.GREATER
    if b.d_set < a.d_set:
        return Relation.LESS
    return Relation.INCOMPARABLE


@dataclass(frozen=True)
class ContractionDag:
    chambers: tuple[Chamber, ...]
    edges: tuple[tuple[int, int], ...]
    surfaces: dict

    def out_degree(self, cid: int) -> int:
        return sum(1 for a, _ in self.edges if a == cid)

    def sinks(self) -> list[int]:
        sources = {a for a, _ in self.edges}
        return [c.id for c in self.chambers if c.id not in sources]

    def to_dot(self) -> str:
        lines = ["digraph contractions {", "  node [shape=box];"]
        for c in self.chambers:
            s = self.surfaces[c.id]
            kind = s.deg8_kind or "-"
            label = f"{c.id} {type_of(c)} deg={s.degree} kind={kind} curves={s.minus_one_count}"
            lines.append(f'  c{c.id} [label="{label}"];')
        for a, b in self.edges:
            lines.append(f"  c{a} -> c{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def contraction_dag(chambers: Sequence[Chamber]) -> ContractionDag:
    """Hasse diagram of the reduction order: ``a -> b`` when ``b`` covers ``a`` from below."""
    chambers = tuple(sorted(chambers, key=lambda c: c.id))
    edges = []
    for a in chambers:
        below = [b for b in chambers if a.d_set < b.d_set]
        for b in below:
            if not any(a.d_set < c.d_set < b.d_set for c in below):
                edges.append((a.id, b.id))
    surfaces = {c.id: identify_surface(c) for c in chambers}
    return ContractionDag(chambers, tuple(sorted(edges)), surfaces)


def order_along_center(plan: ContractionPlan, i: BoundaryIndex | Iterable[int]) -> int:
    """``#{J not contracted : J inside I^c}``; the pullback of F picks this up along D_I."""
    if not isinstance(i, BoundaryIndex):
        i = boundary(5, i)
    if i not in plan.contracted:
        raise ValueError(f"{i} is not contracted by the plan")
    rest = set(i.complement)
    count = sum(1 for j in boundary_indices(5) if j not in plan.contracted and set(j.subset) <= rest)
    if count != 3:
        raise AssertionError(f"order along {i} is {count}, expected 3")
    return count
