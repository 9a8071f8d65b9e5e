"""Local reductions of realizations and the cycle-free minimizer.

Each reduction shrinks one state space in place, preserves the realized
code, and reports the coordinate map it applied. Three moves exist:

- trim: a constraint's projection onto a state misses part of it, so the
  state space is restricted to that projection.
- merge: a constraint has nonzero codewords supported on a single state,
  so the state space is replaced by the quotient modulo those values.
- unobservability trim: a nonzero all-zero-symbol trajectory singles out
  a direction of some state space, which is then cut away.

The dual merge runs the unobservability trim on the dual realization and
maps the result back, lowering the controllability defect instead.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .blockcode import BlockedCode, BlockStructure
from .errors import (
    DimensionMismatchError,
    NotCycleFreeError,
    NotReducibleError,
)
from .errors import UnknownBlockError
from .fields import MatrixF, complete_to_basis, inverse, kernel, rank
from .realization import (
    Realization,
    StateVar,
    Topology,
    dualize,
    is_trim,
    unobservable_behavior,
)

TRIM = "trim"
MERGE = "merge"
UNOBS_TRIM = "unobservability-trim"
DUAL_MERGE = "dual-merge"


@dataclass(frozen=True)
class ReductionStep:
    """One applied reduction: which state shrank and by what coordinate map.

    basis_change has shape (new_dim, old_dim); a value v of the old state
    space maps to v @ basis_change.T in the new coordinates.
    """

    kind: str
    state_id: str
    old_dim: int
    new_dim: int
    basis_change: MatrixF
    constraint_id: str | None = None

    def __post_init__(self) -> None:
        if self.new_dim >= self.old_dim:
            raise ValueError("reduction must strictly shrink the state")
        if self.basis_change.shape != (self.new_dim, self.old_dim):
            raise ValueError("basis change shape does not match dims")
        if rank(self.basis_change) != self.new_dim:
            raise ValueError("basis change must have full row rank")


def _restrict_rows(code: BlockedCode, block_id: str, functionals: np.ndarray) -> np.ndarray:
    """Generator rows of {w in code : w_block @ functionals = 0}."""
    field = code.field
    g = code.space.basis.array
    cols = code.structure.positions([block_id])
    prod = (g[:, cols] @ functionals) % field.p
    # left null space of prod picks the surviving row combinations
    keep = kernel(MatrixF(field, prod.T)).basis.array
    return (keep @ g) % field.p


def _map_block_rows(rows: np.ndarray, code_structure: BlockStructure, block_id: str,
                    x: np.ndarray, p: int) -> np.ndarray:
    """Rewrite each row's block through v -> v @ x, splicing the new width in."""
    at = code_structure.offset(block_id)
    before = rows[:, :at]
    after = rows[:, at + code_structure.dim(block_id):]
    mapped = (rows[:, at:at + code_structure.dim(block_id)] @ x) % p
    return np.hstack([before, mapped, after])


def _with_state(r: Realization, state_id: str, new_dim: int,
                replaced_rows: dict[str, np.ndarray]) -> Realization:
    """Rebuild r with one state's dim changed and its endpoint codes swapped."""
    topo = r.topology
    old = topo.state(state_id)
    new_states = tuple(
        StateVar(s.id, new_dim, s.left, s.right, s.negate_at) if s.id == state_id else s
        for s in topo.states)
    new_topo = Topology(topo.symbols, new_states, topo.constraints)
    codes = r.codes
    for cid, rows in replaced_rows.items():
        structure = new_topo.constraint_structure(cid)
        codes[cid] = BlockedCode.from_rows(r.field, structure, MatrixF(r.field, rows))
    return Realization(r.field, new_topo, codes)


def trim_state(r: Realization, state_id: str, constraint_id: str
               ) -> tuple[Realization, ReductionStep]:
    """Restrict one state space to the given constraint's projection onto it."""
    r.ensure_valid()
    verdict = is_trim(r, constraint_id, state_id)
    if verdict.ok:
        raise NotReducibleError(
            f"constraint {constraint_id!r} is already trim at state {state_id!r}")
    state = r.topology.state(state_id)
    d = state.dim
    proj = r.code(constraint_id).project([state_id]).space
    new_dim = proj.dim
    # RREF basis: coordinates of a value inside proj are its pivot entries
    selector = np.eye(d, dtype=np.int64)[:, list(proj.pivots)]
    functionals = proj.orthogonal().basis.array.T

    other = state.left if state.right == constraint_id else state.right
    replaced: dict[str, np.ndarray] = {}
    trimmed_code = r.code(constraint_id)
    replaced[constraint_id] = _map_block_rows(
        trimmed_code.space.basis.array, trimmed_code.structure, state_id,
        selector, r.field.p)
    other_code = r.code(other)
    restricted = _restrict_rows(other_code, state_id, functionals)
    replaced[other] = _map_block_rows(
        restricted, other_code.structure, state_id, selector, r.field.p)

    step = ReductionStep(TRIM, state_id, d, new_dim,
                         MatrixF(r.field, selector.T), constraint_id)
    return _with_state(r, state_id, new_dim, replaced), step


def merge_state(r: Realization, state_id: str, constraint_id: str
                ) -> tuple[Realization, ReductionStep]:
    """Quotient one state space by the given constraint's cross-section on it."""
    r.ensure_valid()
    state = r.topology.state(state_id)
    if state_id not in r.topology.constraint(constraint_id).vars:
        raise UnknownBlockError(
            f"state {state_id!r} is not involved in constraint {constraint_id!r}")
    section = r.code(constraint_id).cross_section([state_id]).space
    if section.dim == 0:
        raise NotReducibleError(
            f"constraint {constraint_id!r} is already proper at state {state_id!r}")
    d = state.dim
    new_dim = d - section.dim
    complement = complete_to_basis(section.basis)
    q = MatrixF(r.field, np.vstack([complement.array, section.basis.array]))
    qi = inverse(q).array
    x = qi[:, :new_dim]

    replaced: dict[str, np.ndarray] = {}
    for cid in (state.left, state.right):
        code = r.code(cid)
        replaced[cid] = _map_block_rows(
            code.space.basis.array, code.structure, state_id, x, r.field.p)

    step = ReductionStep(MERGE, state_id, d, new_dim,
                         MatrixF(r.field, x.T), constraint_id)
    return _with_state(r, state_id, new_dim, replaced), step


def _unobservable_direction(r: Realization) -> tuple[str, MatrixF]:
    """Pick the state and basis used by the unobservability trim.

    Returns (state_id, G) where G is a basis of that state space whose
    first row is the chosen trajectory's value there. Deterministic:
    first canonical generator of the unobservable behavior, then the
    first state (topology order) where it is nonzero.
    """
    unobs = unobservable_behavior(r)
    if unobs.dim == 0:
        raise NotReducibleError("realization is observable; nothing to trim")
    trajectory = unobs.space.basis.array[0]
    for state in r.topology.states:
        at = unobs.structure.offset(state.id)
        block = trajectory[at:at + state.dim]
        if block.any():
            seed = MatrixF(r.field, block.reshape(1, -1))
            g = np.vstack([seed.array, complete_to_basis(seed).array])
            return state.id, MatrixF(r.field, g)
    raise AssertionError("nonzero unobservable trajectory with all-zero state blocks")


def reduce_unobservable(r: Realization) -> tuple[Realization, ReductionStep]:
    """Cut the direction of one state space spanned by an unobservable trajectory.

    The state's dim, dim B, and the unobservable dimension each drop by
    exactly one; the realized code is unchanged.
    """
    r.ensure_valid()
    state_id, g = _unobservable_direction(r)
    state = r.topology.state(state_id)
    d = state.dim
    gi = inverse(g).array
    functionals = gi[:, :1]
    x = gi[:, 1:]

    replaced: dict[str, np.ndarray] = {}
    for cid in (state.left, state.right):
        code = r.code(cid)
        restricted = _restrict_rows(code, state_id, functionals)
        replaced[cid] = _map_block_rows(
            restricted, code.structure, state_id, x, r.field.p)

    step = ReductionStep(UNOBS_TRIM, state_id, d, d - 1, MatrixF(r.field, x.T))
    return _with_state(r, state_id, d - 1, replaced), step


def dual_merge_unobservable(r: Realization) -> tuple[Realization, ReductionStep]:
    """Run the unobservability trim on the dual and map back; lowers the defect.

    The returned step records the quotient map applied to the primal
    state coordinates.
    """
    r.ensure_valid()
    rd = dualize(r)
    state_id, g = _unobservable_direction(rd)
    reduced_dual, _ = reduce_unobservable(rd)
    result = dualize(reduced_dual)
    d = g.rows
    step = ReductionStep(DUAL_MERGE, state_id, d, d - 1,
                         MatrixF(r.field, g.array[1:]))
    return result, step


def next_reduction(r: Realization) -> tuple[str, str, str] | None:
    """First applicable trim/merge as (kind, state_id, constraint_id), or None.

    Scan order: constraints in topology order; within one, its states in
    topology order; trim checked before merge at each pair.
    """
    r.ensure_valid()
    topo = r.topology
    state_index = {s.id: i for i, s in enumerate(topo.states)}
    for c in topo.constraints:
        incident = sorted((v for v in c.vars if topo.is_state(v)),
                          key=state_index.__getitem__)
        for sid in incident:
            if not is_trim(r, c.id, sid).ok:
                return (TRIM, sid, c.id)
            if r.code(c.id).cross_section([sid]).dim > 0:
                return (MERGE, sid, c.id)
    return None


def reduce_to_fixpoint(r: Realization) -> tuple[Realization, list[ReductionStep]]:
    """Apply trim/merge/unobservability reductions until none applies.

    The result is trim and proper at every constraint and observable.
    Terminates: every step strictly shrinks the total state dimension or
    the unobservable dimension.
    """
    r.ensure_valid()
    steps: list[ReductionStep] = []
    current = r
    while True:
        found = next_reduction(current)
        if found is not None:
            kind, sid, cid = found
            op = trim_state if kind == TRIM else merge_state
            current, step = op(current, sid, cid)
            steps.append(step)
            continue
        if unobservable_behavior(current).dim > 0:
            current, step = reduce_unobservable(current)
            steps.append(step)
            continue
        return current, steps


def minimize_cycle_free(r: Realization, *, constraint_order: Sequence[str] | None = None
                        ) -> tuple[Realization, list[ReductionStep]]:
    """Reduce a cycle-free realization until every constraint is trim and proper.

    On a tree this fixpoint is the minimal realization on that topology;
    its state dims match cut_dims of the realized code. constraint_order
    overrides the scan order (the fixpoint itself is order-independent).
    """
    r.ensure_valid()
    if not r.topology.is_cycle_free():
        raise NotCycleFreeError("minimization requires a cycle-free topology")
    order = tuple(constraint_order) if constraint_order is not None \
        else r.topology.constraint_ids()
    if sorted(order) != sorted(r.topology.constraint_ids()):
        raise ValueError("constraint_order must permute the constraint ids")

    steps: list[ReductionStep] = []
    current = r
    changed = True
    while changed:
        changed = False
        for cid in order:
            c = current.topology.constraint(cid)
            for sid in c.vars:
                if not current.topology.is_state(sid):
                    continue
                if not is_trim(current, cid, sid).ok:
                    current, step = trim_state(current, sid, cid)
                    steps.append(step)
                    changed = True
                if current.code(cid).cross_section([sid]).dim > 0:
                    current, step = merge_state(current, sid, cid)
                    steps.append(step)
                    changed = True
    return current, steps


@dataclass(frozen=True)
class EdgeCut:
    """What the realized code forces across one tree edge.

    The least state dimension any realization can get away with at this
    edge is dim(project onto one side) minus dim(cross section of that
    side): symbols that show up on the side but carry no information
    across the cut do not need state support.
    """

    state_id: str
    past_symbols: tuple[str, ...]
    projection_dim: int
    cross_section_dim: int

    @property
    def minimal_dim(self) -> int:
        return self.projection_dim - self.cross_section_dim


def _side_symbols(topo: Topology, cut_state: str, root: str) -> list[str]:
    """Symbol ids reachable from root without crossing the cut edge."""
    reach = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for s in topo.states:
            if s.id == cut_state:
                continue
            for a, b in ((s.left, s.right), (s.right, s.left)):
                if a == v and b not in reach:
                    reach.add(b)
                    queue.append(b)
    out = []
    for c in topo.constraints:
        if c.id not in reach:
            continue
        out.extend(v for v in c.vars if topo.is_symbol(v))
    order = {sid: i for i, sid in enumerate(topo.symbol_ids())}
    out.sort(key=order.__getitem__)
    return out


def cut_dims(code: BlockedCode, topology: Topology) -> list[EdgeCut]:
    """Minimal state dim at every tree edge: dim(projection) - dim(cross-section).

    Computed from the past side of each cut and checked against the
    future side, which must agree.
    """
    if not topology.is_cycle_free():
        raise NotCycleFreeError("cut dimensions are defined on trees only")
    want = {s.id: s.dim for s in topology.symbols}
    have = {bid: code.structure.dim(bid) for bid in code.structure.ids()}
    if want != have:
        raise DimensionMismatchError(
            "code blocks do not match the topology's symbols")
    cuts = []
    for s in topology.states:
        past = _side_symbols(topology, s.id, s.left)
        future = _side_symbols(topology, s.id, s.right)
        proj = code.project(past).dim
        sect = code.cross_section(past).dim
        f_dim = code.project(future).dim - code.cross_section(future).dim
        if proj - sect != f_dim:
            raise AssertionError(
                f"cut at {s.id!r}: past gives {proj - sect}, future gives {f_dim}")
        cuts.append(EdgeCut(s.id, tuple(past), proj, sect))
    return cuts
