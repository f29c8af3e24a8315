"""From cell complexes to cluster states and topological correlations.

Qubits live on the faces and edges of a complex; the interaction graph
joins each face qubit to the qubits on its boundary edges. Two engines sit
behind one interface: the stabilizer tableau for scale, the dense oracle
for cross-validation and non-Clifford observables.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import dense
from .complexes import CellComplex
from .pauli import PauliOperator
from .tableau import StabilizerTableau

ENGINES = ("tableau", "dense")


@dataclass(frozen=True)
class InteractionGraph:
    """Qubit vertices tagged face|edge plus unordered interaction edges."""

    vertices: tuple[str, ...]
    kinds: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self):
        if len(self.vertices) != len(set(self.vertices)):
            raise ValueError("duplicate vertex labels")
        if len(self.kinds) != len(self.vertices):
            raise ValueError("one kind tag required per vertex")
        for kind in self.kinds:
            if kind not in ("face", "edge"):
                raise ValueError(f"unknown vertex kind {kind!r}")
        known = set(self.vertices)
        seen = set()
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self-loop at {a!r}")
            if a not in known or b not in known:
                raise ValueError(f"edge ({a!r}, {b!r}) references unknown vertices")
            key = frozenset((a, b))
            if key in seen:
                raise ValueError(f"duplicate edge ({a!r}, {b!r})")
            seen.add(key)

    @property
    def qubit_count(self) -> int:
        return len(self.vertices)

    def index(self, label: str) -> int:
        try:
            return self.vertices.index(label)
        except ValueError:
            raise KeyError(f"unknown qubit {label!r}") from None

    def kind(self, label: str) -> str:
        return self.kinds[self.index(label)]

    def edge_indexes(self) -> list[tuple[int, int]]:
        pos = {v: i for i, v in enumerate(self.vertices)}
        return [(pos[a], pos[b]) for a, b in self.edges]

    def neighbors(self, label: str) -> tuple[str, ...]:
        out = []
        for a, b in self.edges:
            if a == label:
                out.append(b)
            elif b == label:
                out.append(a)
        return tuple(sorted(out))

    def to_json(self) -> str:
        """Adjacency lists keyed by qubit label, plus the face|edge tags."""
        adjacency = {v: list(self.neighbors(v)) for v in self.vertices}
        kinds = dict(zip(self.vertices, self.kinds))
        return json.dumps(
            {"qubits": list(self.vertices), "kinds": kinds, "adjacency": adjacency},
            indent=2,
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "InteractionGraph":
        payload = json.loads(text)
        vertices = tuple(payload["qubits"])
        kinds = tuple(payload["kinds"][v] for v in vertices)
        edges = []
        seen = set()
        for a, nbrs in payload["adjacency"].items():
            for b in nbrs:
                key = frozenset((a, b))
                if key not in seen:
                    seen.add(key)
                    edges.append((a, b))
        return cls(vertices, kinds, tuple(edges))


@dataclass(frozen=True)
class StabilizerGenerator:
    """K = X on the center qubit, Z on each interaction neighbor."""

    center: str
    operator: PauliOperator


@dataclass(frozen=True)
class OutcomeRecord:
    """Per-qubit measurement outcomes (+-1) and the basis used for each."""

    outcomes: dict[str, int]
    basis: dict[str, str]

    def __post_init__(self):
        if set(self.outcomes) != set(self.basis):
            raise ValueError("outcomes and basis must cover the same qubits")
        for q, v in self.outcomes.items():
            if v not in (-1, 1):
                raise ValueError(f"outcome for {q!r} must be +-1, got {v}")

    def value(self, label: str) -> int:
        if label not in self.outcomes:
            raise KeyError(f"no recorded outcome for qubit {label!r}")
        return self.outcomes[label]

    def product(self, labels) -> int:
        out = 1
        for label in labels:
            out *= self.value(label)
        return out


def interaction_graph(cx: CellComplex) -> InteractionGraph:
    """One qubit per face and per edge cell; graph edge (f, e) iff e in df."""
    face_names = cx.cells(2)
    edge_names = cx.cells(1)
    if not face_names:
        raise ValueError("complex has no faces")
    vertices = face_names + edge_names
    kinds = ("face",) * len(face_names) + ("edge",) * len(edge_names)
    edges = tuple(
        (f, e) for f in face_names for e in sorted(cx.faces[f])
    )
    return InteractionGraph(vertices, kinds, edges)


def stabilizer_generators(graph: InteractionGraph) -> list[StabilizerGenerator]:
    n = graph.qubit_count
    pos = {v: i for i, v in enumerate(graph.vertices)}
    zmask_of = {v: 0 for v in graph.vertices}
    for a, b in graph.edges:
        zmask_of[a] |= 1 << pos[b]
        zmask_of[b] |= 1 << pos[a]
    return [
        StabilizerGenerator(v, PauliOperator(n, 1 << pos[v], zmask_of[v], 0))
        for v in graph.vertices
    ]


@dataclass
class ClusterState:
    """A cluster state bound to its interaction graph and engine."""

    graph: InteractionGraph
    engine: str
    tableau: StabilizerTableau | None = None
    vector: dense.StateVector | None = None

    def copy(self) -> "ClusterState":
        return ClusterState(
            self.graph,
            self.engine,
            self.tableau.copy() if self.tableau is not None else None,
            self.vector.copy() if self.vector is not None else None,
        )

    def index(self, label: str) -> int:
        return self.graph.index(label)

    def expectation(self, op: PauliOperator) -> float:
        if self.engine == "tableau":
            return float(self.tableau.expectation_pauli(op))
        return self.vector.expectation_pauli(op)

    def measure(self, op: PauliOperator, rng: np.random.Generator) -> int:
        if self.engine == "tableau":
            return self.tableau.measure_pauli(op, rng)
        return self.vector.measure_pauli(op, rng)


def build_cluster(graph: InteractionGraph, engine: str = "tableau") -> ClusterState:
    """Prepare |+>^n and apply CZ across every interaction edge."""
    if engine not in ENGINES:
        raise ValueError(f"engine must be one of {ENGINES}, got {engine!r}")
    n = graph.qubit_count
    if engine == "dense":
        return ClusterState(graph, "dense", vector=dense.build_graph_state_dense(graph))
    tab = StabilizerTableau(n)
    for q in range(n):
        tab.h(q)
    for a, b in graph.edge_indexes():
        tab.cz(a, b)
    return ClusterState(graph, "tableau", tableau=tab)


def surface_correlation(state: ClusterState, face_qubits) -> int:
    """X-product expectation over a set of qubits, rounded to {-1, 0, +1}.

    Equals +1 whenever the qubit set is a closed surface of the source
    complex and no errors were applied.
    """
    labels = list(face_qubits)
    if not labels:
        raise ValueError("surface must contain at least one qubit")
    n = state.graph.qubit_count
    xmask = 0
    for label in labels:
        xmask |= 1 << state.index(label)
    value = state.expectation(PauliOperator(n, xmask, 0, 0))
    rounded = round(value)
    if abs(value - rounded) > 1e-9 or rounded not in (-1, 0, 1):
        raise AssertionError(f"non-stabilizer correlation value {value}")
    return int(rounded)


def measure_all(
    state: ClusterState, rng: np.random.Generator, basis: str = "x"
) -> OutcomeRecord:
    """Destructive single-basis readout of every qubit, in vertex order."""
    if basis not in ("x", "z"):
        raise ValueError(f"basis must be 'x' or 'z', got {basis!r}")
    work = state.copy()
    outcomes: dict[str, int] = {}
    if work.engine == "tableau":
        tab = work.tableau
        measure = tab.measure_x if basis == "x" else tab.measure_z
        for i, label in enumerate(work.graph.vertices):
            outcomes[label] = measure(i, rng)
    else:
        n = work.graph.qubit_count
        for i, label in enumerate(work.graph.vertices):
            outcomes[label] = work.vector.measure_pauli(
                PauliOperator.single(n, i, basis.upper()), rng
            )
    return OutcomeRecord(outcomes, {label: basis for label in outcomes})


def measure_all_x(state: ClusterState, rng: np.random.Generator) -> OutcomeRecord:
    """Destructive X-basis readout of every qubit, in vertex order."""
    return measure_all(state, rng, "x")


def carve_defect(
    state: ClusterState, qubits, rng: np.random.Generator
) -> tuple[ClusterState, OutcomeRecord]:
    """Measure the listed qubits in Z, removing them from the cluster.

    Outcomes are recorded but no frame correction is applied; downstream
    processing works on the classical outcomes.
    """
    labels = list(qubits)
    if len(labels) != len(set(labels)):
        raise ValueError("carve list contains duplicate qubits")
    work = state.copy()
    outcomes: dict[str, int] = {}
    for label in labels:
        i = work.index(label)
        if work.engine == "tableau":
            outcomes[label] = work.tableau.measure_z(i, rng)
        else:
            outcomes[label] = work.vector.measure_pauli(
                PauliOperator.single(work.graph.qubit_count, i, "Z"), rng
            )
    basis = {label: "z" for label in outcomes}
    return work, OutcomeRecord(outcomes, basis)


def dual_syndrome_check(state: ClusterState) -> int:
    """X-product over the two edge qubits: the one bit of dual syndrome."""
    edge_qubits = [
        v for v, kind in zip(state.graph.vertices, state.graph.kinds) if kind == "edge"
    ]
    if len(edge_qubits) != 2:
        raise ValueError(
            f"dual syndrome needs exactly two edge qubits, found {len(edge_qubits)}"
        )
    return surface_correlation(state, edge_qubits)
