"""Standard realization builders and trajectory-graph connectivity.

Builders: generator-style (equality nodes feeding per-position combiner
nodes), parity-check style (its dual, a Tanner graph), and product
trellises (conventional or tail-biting) from spanned generators.

trajectory_components builds the graph whose nodes are reachable state
values and whose edges are the branches of the behavior, and counts its
connected components. For a reduced tail-biting trellis, more than one
component is equivalent to uncontrollability; for anything else the
verdict is withheld.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .blockcode import DEFAULT_ENUM_CAP, BlockedCode, BlockStructure
from .fields import MatrixF, PrimeField
from .realization import (
    Constraint,
    Realization,
    StateVar,
    SymbolVar,
    Topology,
    behavior,
    controllability_defect,
    is_reduced,
)

CONVENTIONAL = "conventional"
TAIL_BITING = "tail-biting"


@dataclass(frozen=True)
class Span:
    """Circular coordinate window of one trellis generator.

    Covered positions run from start to end inclusive, wrapping modulo n.
    The crossed edges are the ones stepped over when walking start..end,
    so a one-position span crosses nothing. A degenerate span covers all
    positions and crosses all edges regardless of start/end.
    """

    start: int = 0
    end: int = 0
    degenerate: bool = False

    def covered(self, n: int) -> list[int]:
        if self.degenerate:
            return list(range(n))
        length = (self.end - self.start) % n + 1
        return [(self.start + u) % n for u in range(length)]

    def crossed(self, n: int) -> list[int]:
        if self.degenerate:
            return list(range(n))
        steps = (self.end - self.start) % n
        return [(self.start + 1 + u) % n for u in range(steps)]

    def wraps(self, n: int) -> bool:
        return self.degenerate or self.start > self.end

    def check(self, n: int) -> None:
        if not (0 <= self.start < n and 0 <= self.end < n):
            raise ValueError(f"span {self.start}:{self.end} out of range for n={n}")


@dataclass(frozen=True)
class SpannedGenerator:
    """One generator vector together with its span window."""

    vector: tuple[int, ...]
    span: Span

    def __post_init__(self) -> None:
        object.__setattr__(self, "vector", tuple(int(v) for v in self.vector))

    def check(self, n: int) -> None:
        if len(self.vector) != n:
            raise ValueError(f"generator length {len(self.vector)} != n={n}")
        self.span.check(n)
        inside = set(self.span.covered(n))
        for k, v in enumerate(self.vector):
            if v and k not in inside:
                raise ValueError(
                    f"generator has nonzero entry at position {k} outside its span")


def _symbol_vars(n: int) -> tuple[SymbolVar, ...]:
    return tuple(SymbolVar(f"a{k}", 1) for k in range(n))


def generator_realization(field: PrimeField, n: int,
                          generators: Sequence[Sequence[int]]) -> Realization:
    """Equality node per generator, combiner node per position.

    Each nonzero entry g[i][k] becomes a dim-1 replica state "g{i}@p{k}"
    from equality node "gen{i}" to position node "pos{k}"; the position
    node pins its symbol to the weighted sum of incoming replicas. The
    realized code is the row span of the generators.
    """
    rows = [tuple(int(v) % field.p for v in g) for g in generators]
    if not rows:
        raise ValueError("at least one generator required")
    if any(len(g) != n for g in rows):
        raise ValueError("all generators must have length n")
    if any(not any(g) for g in rows):
        raise ValueError("zero generator not allowed: its equality node would be isolated")

    supports = [tuple(k for k, v in enumerate(g) if v) for g in rows]
    columns = [tuple(i for i, g in enumerate(rows) if g[k]) for k in range(n)]

    states = tuple(StateVar(f"g{i}@p{k}", 1, f"gen{i}", f"pos{k}")
                   for i, supp in enumerate(supports) for k in supp)
    constraints = []
    codes: dict[str, BlockedCode] = {}
    for i, supp in enumerate(supports):
        cid = f"gen{i}"
        vars_ = tuple(f"g{i}@p{k}" for k in supp)
        constraints.append(Constraint(cid, vars_))
        structure = BlockStructure(tuple((v, 1) for v in vars_))
        ones = MatrixF(field, np.ones((1, len(supp)), dtype=np.int64))
        codes[cid] = BlockedCode.from_rows(field, structure, ones)
    for k in range(n):
        cid = f"pos{k}"
        vars_ = (f"a{k}",) + tuple(f"g{i}@p{k}" for i in columns[k])
        constraints.append(Constraint(cid, vars_))
        structure = BlockStructure(tuple((v, 1) for v in vars_))
        local = np.zeros((len(columns[k]), 1 + len(columns[k])), dtype=np.int64)
        for pos, i in enumerate(columns[k]):
            local[pos, 0] = rows[i][k]
            local[pos, 1 + pos] = 1
        codes[cid] = BlockedCode.from_rows(field, structure, MatrixF(field, local))

    topo = Topology(_symbol_vars(n), states, tuple(constraints))
    return Realization(field, topo, codes)


def parity_check_realization(field: PrimeField, n: int,
                             checks: Sequence[Sequence[int]]) -> Realization:
    """Tanner graph: zero-sum node per check, equality-style node per position.

    The position node for symbol a_k pins every incident replica to
    h[i][k] * a_k; the check node forces its replicas to sum to zero.
    Realizes the right null space of the check matrix. Equals the dual
    of the generator-style realization of the checks, with "gen" nodes
    renamed "chk".
    """
    rows = [tuple(int(v) % field.p for v in h) for h in checks]
    if not rows:
        raise ValueError("at least one check required")
    if any(len(h) != n for h in rows):
        raise ValueError("all checks must have length n")
    if any(not any(h) for h in rows):
        raise ValueError("zero check row not allowed: its node would be isolated")

    supports = [tuple(k for k, v in enumerate(h) if v) for h in rows]
    columns = [tuple(i for i, h in enumerate(rows) if h[k]) for k in range(n)]

    states = tuple(StateVar(f"g{i}@p{k}", 1, f"chk{i}", f"pos{k}")
                   for i, supp in enumerate(supports) for k in supp)
    constraints = []
    codes: dict[str, BlockedCode] = {}
    for i, supp in enumerate(supports):
        cid = f"chk{i}"
        vars_ = tuple(f"g{i}@p{k}" for k in supp)
        constraints.append(Constraint(cid, vars_))
        structure = BlockStructure(tuple((v, 1) for v in vars_))
        w = len(supp)
        local = np.zeros((max(w - 1, 0), w), dtype=np.int64)
        for j in range(1, w):
            local[j - 1, 0] = 1
            local[j - 1, j] = field.p - 1
        codes[cid] = BlockedCode.from_rows(field, structure, MatrixF(field, local))
    for k in range(n):
        cid = f"pos{k}"
        vars_ = (f"a{k}",) + tuple(f"g{i}@p{k}" for i in columns[k])
        constraints.append(Constraint(cid, vars_))
        structure = BlockStructure(tuple((v, 1) for v in vars_))
        local = np.zeros((1, 1 + len(columns[k])), dtype=np.int64)
        local[0, 0] = 1
        for pos, i in enumerate(columns[k]):
            local[0, 1 + pos] = rows[i][k]
        codes[cid] = BlockedCode.from_rows(field, structure, MatrixF(field, local))

    topo = Topology(_symbol_vars(n), states, tuple(constraints))
    return Realization(field, topo, codes)


def product_trellis(field: PrimeField, n: int, gens: Sequence[SpannedGenerator],
                    kind: str = TAIL_BITING) -> Realization:
    """Product construction: one section per position, states sized by spans.

    State j sits between sections j-1 and j and has one coordinate per
    generator whose span crosses edge j. Section i is generated by one
    local word per generator: its edge-i indicator, its value at i, and
    its edge-(i+1) indicator. Realizes the row span of the generators.

    Conventional trellises get explicit zero-dimensional boundary states
    closed off by empty end constraints; wrap-around and degenerate
    spans are rejected there.
    """
    if kind not in (CONVENTIONAL, TAIL_BITING):
        raise ValueError(f"unknown trellis kind {kind!r}")
    gens = list(gens)
    if not gens:
        raise ValueError("at least one spanned generator required")
    if kind == TAIL_BITING and n < 2:
        raise ValueError("tail-biting trellis needs n >= 2")
    if kind == CONVENTIONAL and n < 1:
        raise ValueError("conventional trellis needs n >= 1")
    for g in gens:
        g.check(n)
        if kind == CONVENTIONAL and g.span.wraps(n):
            raise ValueError(
                "conventional trellis forbids wrap-around and degenerate spans")

    n_edges = n if kind == TAIL_BITING else n + 1
    if kind == TAIL_BITING:
        crossers = [[] for _ in range(n_edges)]
        for t, g in enumerate(gens):
            for j in g.span.crossed(n):
                crossers[j].append(t)
    else:
        crossers = [[] for _ in range(n_edges)]
        for t, g in enumerate(gens):
            for u in range(g.span.end - g.span.start):
                crossers[g.span.start + 1 + u].append(t)

    def left_of(j: int) -> str:
        if kind == TAIL_BITING:
            return f"c{(j - 1) % n}"
        return "end0" if j == 0 else f"c{j - 1}"

    def right_of(j: int) -> str:
        if kind == TAIL_BITING:
            return f"c{j}"
        return "end1" if j == n else f"c{j}"

    states = tuple(StateVar(f"s{j}", len(crossers[j]), left_of(j), right_of(j))
                   for j in range(n_edges))

    constraints = []
    codes: dict[str, BlockedCode] = {}
    for i in range(n):
        cid = f"c{i}"
        j_in, j_out = i, (i + 1) % n if kind == TAIL_BITING else i + 1
        vars_ = (f"s{j_in}", f"a{i}", f"s{j_out}")
        constraints.append(Constraint(cid, vars_))
        d_in, d_out = len(crossers[j_in]), len(crossers[j_out])
        local = np.zeros((len(gens), d_in + 1 + d_out), dtype=np.int64)
        for t, g in enumerate(gens):
            if t in crossers[j_in]:
                local[t, crossers[j_in].index(t)] = 1
            local[t, d_in] = g.vector[i] % field.p
            if t in crossers[j_out]:
                local[t, d_in + 1 + crossers[j_out].index(t)] = 1
        structure = BlockStructure(((f"s{j_in}", d_in), (f"a{i}", 1), (f"s{j_out}", d_out)))
        codes[cid] = BlockedCode.from_rows(field, structure, MatrixF(field, local))
    if kind == CONVENTIONAL:
        for cid, sid in (("end0", "s0"), ("end1", f"s{n}")):
            constraints.append(Constraint(cid, (sid,)))
            structure = BlockStructure(((sid, 0),))
            codes[cid] = BlockedCode.from_rows(
                field, structure, MatrixF(field, np.zeros((0, 0), dtype=np.int64)))

    topo = Topology(_symbol_vars(n), states, tuple(constraints))
    return Realization(field, topo, codes)


def is_tail_biting_trellis(topology: Topology) -> bool:
    """Single cycle of constraints, each touching exactly two states."""
    if len(topology.constraints) < 2:
        return False
    if len(topology.states) != len(topology.constraints):
        return False
    for c in topology.constraints:
        if sum(1 for v in c.vars if topology.is_state(v)) != 2:
            return False
    return topology.is_connected()


@dataclass(frozen=True)
class ComponentReport:
    """Trajectory-graph connectivity summary."""

    count: int
    partition: tuple[tuple[str, tuple[int, ...], int], ...]
    tail_biting: bool
    reduced: bool
    defect: int
    uncontrollable: bool | None
    warning: str | None


def trajectory_components(r: Realization, *,
                          max_points: int = DEFAULT_ENUM_CAP) -> ComponentReport:
    """Count connected pieces of the behavior's state-value branch graph.

    Nodes are the (state, value) pairs that actually occur; every branch
    of every section links the state values it passes through. The
    uncontrollable verdict is populated only for reduced tail-biting
    trellises, where disconnection is equivalent to uncontrollability.
    """
    r.ensure_valid()
    b = behavior(r).code
    topo = r.topology

    node_index: dict[tuple[str, tuple[int, ...]], int] = {}
    for s in topo.states:
        proj = b.project([s.id])
        for value in proj.enumerate(max_points):
            node_index.setdefault((s.id, value), len(node_index))

    parent = list(range(len(node_index)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    for c in topo.constraints:
        state_vars = [v for v in c.vars if topo.is_state(v)]
        if len(state_vars) < 2:
            continue
        branch = b.project(list(c.vars))
        offsets = [(v, branch.structure.offset(v), topo.var_dim(v)) for v in state_vars]
        for word in branch.enumerate(max_points):
            touched = [node_index[(v, word[at:at + d])] for v, at, d in offsets]
            for a, bb in zip(touched, touched[1:]):
                union(a, bb)

    roots: dict[int, int] = {}
    partition = []
    for (sid, value), idx in node_index.items():
        root = find(idx)
        comp = roots.setdefault(root, len(roots))
        partition.append((sid, value, comp))
    count = max(len(roots), 1)

    tb = is_tail_biting_trellis(topo)
    red = is_reduced(r)
    defect = controllability_defect(r)
    if tb and red:
        verdict: bool | None = count > 1
        warning = None
    else:
        verdict = None
        warning = ("connectivity verdict withheld: disconnection is equivalent to "
                   "uncontrollability only for reduced tail-biting trellises")
    return ComponentReport(count, tuple(partition), tb, red, defect, verdict, warning)
