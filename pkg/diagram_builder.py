"""
diagram_builder.py
--------------------------------
From the formal data of a connection on the affine line to its diagram:
- core diagram: one node per circle <q_i> at infinity,
    B_ij = A_ij - beta_i beta_j,   B_ii = A_ii - beta_i^2 + 1,
  with A_ij = Irr Hom(<q_i>, <q_j>) and beta_i = ram(q_i)
- formal monodromy legs glued onto their core nodes
- tame poles: the second node of each leg linked to core node i by beta_i edges
- Cartan matrix C = 2 Id - B, pairing (d, d), dim M_B = 2 - (d, d)
- an independent closed-form dimension count, and integer congruence of forms
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction

import networkx as nx
import numpy as np
from sympy import Matrix

from conjugacy_legs import JordanClass, class_dim, leg_dims
from puiseux_circles import (
    Circle, ExpFactor, IrregularClass, circle_of, end_irr, hom_class, irr_class,
)
from runtime import ValidationError


# ============================================================
# 1️⃣ Problem input
# ============================================================
@dataclass(frozen=True)
class InfinityEntry:
    circle: Circle
    mult: int
    monodromy: JordanClass


@dataclass(frozen=True)
class TamePole:
    location: str
    jclass: JordanClass


def _normalise_location(location) -> str:
    text = str(location).strip()
    try:
        return str(Fraction(text))
    except ZeroDivisionError:
        raise ValidationError(f"pole location {text} has a zero denominator") from None
    except ValueError:
        return text


@dataclass(frozen=True)
class ProblemInput:
    infinity: tuple[InfinityEntry, ...]
    tame_poles: tuple[TamePole, ...] = ()
    warnings: tuple[str, ...] = field(default=(), compare=False)

    @classmethod
    def create(
        cls,
        infinity: Iterable[tuple[Circle | ExpFactor, int, JordanClass | None]],
        tame_poles: Iterable[tuple[object, JordanClass]] = (),
    ) -> ProblemInput:
        """Validate and normalise; repeated circles are merged with a warning.

        A missing monodromy class defaults to a regular semisimple class.
        """
        warnings = []
        merged: dict[Circle, list] = {}
        for item, mult, monodromy in infinity:
            circle = item if isinstance(item, Circle) else circle_of(item)
            if mult < 1:
                raise ValidationError(f"multiplicity of {circle} must be positive, got {mult}")
            if monodromy is not None and monodromy.n != mult:
                raise ValidationError(
                    f"monodromy class {monodromy} at {circle} has size {monodromy.n}, expected {mult}"
                )
            if circle in merged:
                warnings.append(f"circle {circle} listed twice; multiplicities summed")
                slot = merged[circle]
                slot[1] += mult
                if slot[2] is None or monodromy is None:
                    slot[2] = None
                else:
                    slot[2] = slot[2].direct_sum(monodromy)
            else:
                merged[circle] = [circle, mult, monodromy]
        entries = tuple(
            InfinityEntry(circle, mult, monodromy or JordanClass.regular_semisimple(mult))
            for circle, mult, monodromy in merged.values()
        )
        if not entries:
            raise ValidationError("the irregular class at infinity is empty")

        n = sum(e.mult * e.circle.ram for e in entries)
        poles = []
        seen = set()
        for location, jclass in tame_poles:
            location = _normalise_location(location)
            if location in seen:
                raise ValidationError(f"duplicate pole location {location}")
            if jclass.n != n:
                raise ValidationError(f"class {jclass} at pole {location} has size {jclass.n}, expected rank {n}")
            seen.add(location)
            poles.append(TamePole(location, jclass))
        return cls(entries, tuple(poles), tuple(warnings))

    @property
    def theta(self) -> IrregularClass:
        return IrregularClass(tuple((e.circle, e.mult) for e in self.infinity))

    @property
    def rank(self) -> int:
        return self.theta.rank

    def scale(self, gamma) -> ProblemInput:
        """Replace every q_i by gamma * q_i."""
        return replace(
            self,
            infinity=tuple(replace(e, circle=e.circle.scale(gamma)) for e in self.infinity),
        )


# ============================================================
# 2️⃣ Diagrams
# ============================================================
class NodeKind(str, Enum):
    CORE = "core"
    FORMAL_LEG = "formal-leg"
    TAME_LEG = "tame-leg"


@dataclass(frozen=True)
class Node:
    id: str
    label: str
    kind: NodeKind
    dim: int


@dataclass(frozen=True)
class Diagram:
    """Nodes plus a symmetric matrix of unoriented multiplicities.

    Off the diagonal: edges (B_ij). On the diagonal: loops l_i, with B_ii = 2 l_i.
    """

    nodes: tuple[Node, ...]
    edges: tuple[tuple[int, ...], ...]
    core_rams: tuple[int, ...] = ()
    tame_poles: int = 0
    warnings: tuple[str, ...] = field(default=(), compare=False)

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(node.dim for node in self.nodes)

    @property
    def loops(self) -> tuple[int, ...]:
        return tuple(self.edges[i][i] for i in range(self.size))

    def index(self, node_id: str) -> int:
        for i, node in enumerate(self.nodes):
            if node.id == node_id:
                return i
        raise ValidationError(f"no node {node_id!r} in diagram")

    def edge_matrix(self) -> np.ndarray:
        return np.array(self.edges, dtype=object).reshape(self.size, self.size)

    def adjacency(self) -> np.ndarray:
        """Oriented counts B: B_ij = E_ij off the diagonal, B_ii = 2 l_i."""
        b = self.edge_matrix()
        for i in range(self.size):
            b[i, i] = 2 * b[i, i]
        return b

    def with_node(self, node: Node, links: dict[int, int]) -> Diagram:
        size = self.size + 1
        grid = [list(row) + [0] for row in self.edges] + [[0] * size]
        for i, mult in links.items():
            grid[i][size - 1] += mult
            grid[size - 1][i] += mult
        return replace(self, nodes=self.nodes + (node,), edges=tuple(tuple(r) for r in grid))

    def delete_node(self, node_id: str) -> Diagram:
        k = self.index(node_id)
        keep = [i for i in range(self.size) if i != k]
        return replace(
            self,
            nodes=tuple(self.nodes[i] for i in keep),
            edges=tuple(tuple(self.edges[i][j] for j in keep) for i in keep),
        )

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        for i, node in enumerate(self.nodes):
            graph.add_node(i, dim=node.dim, id=node.id)
        for i in range(self.size):
            for j in range(i, self.size):
                if self.edges[i][j]:
                    graph.add_edge(i, j, mult=self.edges[i][j])
        return graph


def isomorphic(d1: Diagram, d2: Diagram) -> bool:
    """Same shape, multiplicities, loops and dimensions (labels and kinds ignored)."""
    return nx.is_isomorphic(
        d1.to_networkx(),
        d2.to_networkx(),
        node_match=lambda a, b: a["dim"] == b["dim"],
        edge_match=lambda a, b: a["mult"] == b["mult"],
    )


# ============================================================
# 3️⃣ Construction
# ============================================================
def hom_matrix(circles: Sequence[Circle]) -> list[list[int]]:
    """A_ij = Irr Hom(<q_i>, <q_j>)."""
    return [[irr_class(hom_class(ci, cj)) for cj in circles] for ci in circles]


def core_diagram(infinity: Sequence[InfinityEntry]) -> Diagram:
    circles = [e.circle for e in infinity]
    for i, ci in enumerate(circles):
        if ci in circles[:i]:
            raise ValidationError(f"circle {ci} appears twice at infinity")
    betas = [c.ram for c in circles]
    a = hom_matrix(circles)
    m = len(circles)
    grid = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if i == j:
                b_ii = a[i][i] - betas[i] ** 2 + 1
                assert b_ii % 2 == 0, f"B_ii = {b_ii} is odd at {circles[i]}"
                grid[i][i] = b_ii // 2
            else:
                grid[i][j] = a[i][j] - betas[i] * betas[j]
    assert all(grid[i][j] == grid[j][i] for i in range(m) for j in range(m)), "core B is not symmetric"
    nodes = tuple(
        Node(f"c{i + 1}", str(e.circle), NodeKind.CORE, e.mult) for i, e in enumerate(infinity)
    )
    return Diagram(nodes, tuple(tuple(r) for r in grid), core_rams=tuple(betas))


def glue_formal_legs(core: Diagram, classes: Sequence[JordanClass]) -> Diagram:
    """Identify the end node of each leg L_i with core node i."""
    diagram = core
    for i, jclass in enumerate(classes):
        node = core.nodes[i]
        if jclass.n != node.dim:
            raise ValidationError(f"monodromy class {jclass} has size {jclass.n}, core node {node.label} has {node.dim}")
        previous = i
        for k, dim in enumerate(leg_dims(jclass)[1:], start=2):
            leg_node = Node(f"f{i + 1}.{k}", f"{node.label} leg {k}", NodeKind.FORMAL_LEG, dim)
            diagram = diagram.with_node(leg_node, {previous: 1})
            previous = diagram.size - 1
    return diagram


def add_tame_pole(diagram: Diagram, jclass: JordanClass, location: str | None = None) -> Diagram:
    """Splay the end node of the pole's leg onto the core nodes."""
    core = [i for i, node in enumerate(diagram.nodes) if node.kind is NodeKind.CORE]
    n = sum(diagram.nodes[i].dim * beta for i, beta in zip(core, diagram.core_rams))
    if jclass.n != n:
        raise ValidationError(f"tame class {jclass} has size {jclass.n}, expected rank {n}")
    pole = diagram.tame_poles + 1
    diagram = replace(diagram, tame_poles=pole)
    where = location if location is not None else f"#{pole}"
    dims = leg_dims(jclass)
    if len(dims) == 1:
        return replace(
            diagram,
            warnings=diagram.warnings + (f"central class {jclass} at pole {where} contributes no nodes",),
        )
    previous = None
    for k, dim in enumerate(dims[1:], start=2):
        node = Node(f"t{pole}.{k}", f"pole {where} leg {k}", NodeKind.TAME_LEG, dim)
        if previous is None:
            links = {i: beta for i, beta in zip(core, diagram.core_rams)}
        else:
            links = {previous: 1}
        diagram = diagram.with_node(node, links)
        previous = diagram.size - 1
    return diagram


# ============================================================
# 4️⃣ Cartan data and dimensions
# ============================================================
@dataclass(frozen=True)
class CartanData:
    C: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]
    pairing: int
    dim_B: int
    nonempty_assumed: bool = True

    def permuted(self, order: Sequence[int]) -> CartanData:
        """Same data with rows/columns listed in the given node order."""
        return replace(
            self,
            C=tuple(tuple(self.C[i][j] for j in order) for i in order),
            d=tuple(self.d[i] for i in order),
        )


def cartan(diagram: Diagram) -> CartanData:
    b = diagram.adjacency()
    c = 2 * np.identity(diagram.size, dtype=object) - b
    d = np.array(diagram.dims, dtype=object)
    pairing = int(d @ c @ d) if diagram.size else 0
    assert pairing % 2 == 0, f"(d,d) = {pairing} is odd"
    return CartanData(
        C=tuple(tuple(int(v) for v in row) for row in c),
        d=tuple(diagram.dims),
        pairing=pairing,
        dim_B=2 - pairing,
    )


@dataclass(frozen=True)
class BuildResult:
    problem: ProblemInput
    diagram: Diagram
    cartan: CartanData
    hom_irr: tuple[tuple[int, ...], ...]
    irr_end: int
    rank: int
    warnings: tuple[str, ...] = ()


def build(problem: ProblemInput) -> BuildResult:
    diagram = core_diagram(problem.infinity)
    diagram = glue_formal_legs(diagram, [e.monodromy for e in problem.infinity])
    for pole in problem.tame_poles:
        diagram = add_tame_pole(diagram, pole.jclass, pole.location)
    a = hom_matrix([e.circle for e in problem.infinity])
    mults = [e.mult for e in problem.infinity]
    irr_end = sum(mults[i] * mults[j] * a[i][j] for i in range(len(a)) for j in range(len(a)))
    return BuildResult(
        problem=problem,
        diagram=diagram,
        cartan=cartan(diagram),
        hom_irr=tuple(tuple(row) for row in a),
        irr_end=irr_end,
        rank=problem.rank,
        warnings=problem.warnings + diagram.warnings,
    )


def dim_oracle(problem: ProblemInput) -> int:
    """Closed-form dimension of M_B from the quasi-Hamiltonian count."""
    n = problem.rank
    return (
        end_irr(problem.theta)
        + 2
        - n * n
        - sum(e.mult**2 for e in problem.infinity)
        + sum(class_dim(e.monodromy) for e in problem.infinity)
        + sum(class_dim(p.jclass) for p in problem.tame_poles)
    )


def check(result: BuildResult) -> int:
    """Cross-check the Cartan dimension against the oracle; returns the dimension."""
    expected = dim_oracle(result.problem)
    assert expected == result.cartan.dim_B, (
        f"dimension oracle gives {expected}, Cartan data gives {result.cartan.dim_B}"
    )
    return expected


def untwisted_edges(circles: Sequence[Circle]) -> list[list[int]]:
    """Edge counts deg(q_i - q_j) - 1 for unramified circles (zero diagonal)."""
    if any(c.ram != 1 for c in circles):
        raise ValidationError("untwisted edge formula needs every circle unramified")
    m = len(circles)
    grid = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if i != j:
                difference = circles[i].rep - circles[j].rep
                grid[i][j] = int(difference.exponents[0]) - 1
    return grid


# ============================================================
# 5️⃣ Congruence of integer forms
# ============================================================
def _as_matrix(rows, name: str) -> np.ndarray:
    m = np.array(rows, dtype=object)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"{name} must be a square matrix, got shape {m.shape}")
    return m


def congruent(m1, m2, g) -> bool:
    """True iff g^T m1 g = m2, in exact integer arithmetic."""
    a, b, t = _as_matrix(m1, "M1"), _as_matrix(m2, "M2"), _as_matrix(g, "g")
    if not a.shape == b.shape == t.shape:
        raise ValidationError(f"size mismatch: {a.shape}, {b.shape}, {t.shape}")
    return bool(np.all(t.T @ a @ t == b))


def search_congruence(m1, m2, bound: int = 2) -> np.ndarray | None:
    """Find unimodular g with entries in [-bound, bound] and g^T m1 g = m2, column by column."""
    a, b = _as_matrix(m1, "M1"), _as_matrix(m2, "M2")
    if a.shape != b.shape:
        raise ValidationError(f"size mismatch: {a.shape}, {b.shape}")
    size = a.shape[0]
    if Matrix(a.tolist()).det() != Matrix(b.tolist()).det():
        return None
    vectors = [np.array(v, dtype=object) for v in itertools.product(range(-bound, bound + 1), repeat=size)]
    candidates = [[v for v in vectors if v @ a @ v == b[i, i]] for i in range(size)]

    def extend(columns: list[np.ndarray]) -> np.ndarray | None:
        j = len(columns)
        if j == size:
            g = np.column_stack(columns)
            return g if abs(Matrix(g.tolist()).det()) == 1 else None
        for v in candidates[j]:
            if all(columns[i] @ a @ v == b[i, j] for i in range(j)):
                found = extend(columns + [v])
                if found is not None:
                    return found
        return None

    return extend([])
