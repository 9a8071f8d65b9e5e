"""Normal-graph realizations of linear codes.

A realization wires constraint codes together on a graph: constraints
are vertices, state variables are edges (each joining exactly two
constraints), symbol variables are half-edges (each at exactly one
constraint). The behavior is the set of global assignments satisfying
every constraint; the realized code is its projection onto the symbols.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

import numpy as np

from .blockcode import BlockedCode, BlockStructure
from .errors import InvalidRealizationError, UnknownBlockError
from .fields import MatrixF, PrimeField, kernel

LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class SymbolVar:
    """A symbol (external) variable; attaches to exactly one constraint."""

    id: str
    dim: int

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise ValueError(f"symbol {self.id!r} has negative dim")


@dataclass(frozen=True)
class StateVar:
    """A state (internal) variable joining its left and right constraints.

    negate_at names the endpoint whose dual constraint code absorbs the
    sign inversion when the realization is dualized.
    """

    id: str
    dim: int
    left: str
    right: str
    negate_at: str = RIGHT

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise ValueError(f"state {self.id!r} has negative dim")
        if self.negate_at not in (LEFT, RIGHT):
            raise ValueError(f"state {self.id!r}: negate_at must be 'left' or 'right'")

    @property
    def negate_constraint(self) -> str:
        return self.left if self.negate_at == LEFT else self.right


@dataclass(frozen=True)
class Constraint:
    """A constraint vertex with its ordered variable list."""

    id: str
    vars: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vars", tuple(str(v) for v in self.vars))


@dataclass(frozen=True)
class ValidationIssue:
    """One structured validation finding."""

    tag: str
    message: str
    ids: tuple[str, ...] = ()


@dataclass(frozen=True)
class Topology:
    """The graph layer of a realization: who connects to whom."""

    symbols: tuple[SymbolVar, ...]
    states: tuple[StateVar, ...]
    constraints: tuple[Constraint, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", tuple(self.symbols))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "constraints", tuple(self.constraints))

    @cached_property
    def _symbols_by_id(self) -> dict[str, SymbolVar]:
        return {s.id: s for s in self.symbols}

    @cached_property
    def _states_by_id(self) -> dict[str, StateVar]:
        return {s.id: s for s in self.states}

    @cached_property
    def _constraints_by_id(self) -> dict[str, Constraint]:
        return {c.id: c for c in self.constraints}

    def symbol_ids(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.symbols)

    def state_ids(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.states)

    def constraint_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.constraints)

    def is_symbol(self, var_id: str) -> bool:
        return var_id in self._symbols_by_id

    def is_state(self, var_id: str) -> bool:
        return var_id in self._states_by_id

    def symbol(self, var_id: str) -> SymbolVar:
        try:
            return self._symbols_by_id[var_id]
        except KeyError:
            raise UnknownBlockError(f"unknown symbol {var_id!r}") from None

    def state(self, var_id: str) -> StateVar:
        try:
            return self._states_by_id[var_id]
        except KeyError:
            raise UnknownBlockError(f"unknown state {var_id!r}") from None

    def constraint(self, cid: str) -> Constraint:
        try:
            return self._constraints_by_id[cid]
        except KeyError:
            raise UnknownBlockError(f"unknown constraint {cid!r}") from None

    def var_dim(self, var_id: str) -> int:
        if var_id in self._symbols_by_id:
            return self._symbols_by_id[var_id].dim
        return self.state(var_id).dim

    def total_symbol_dim(self) -> int:
        return sum(s.dim for s in self.symbols)

    def total_state_dim(self) -> int:
        return sum(s.dim for s in self.states)

    def constraint_structure(self, cid: str) -> BlockStructure:
        c = self.constraint(cid)
        return BlockStructure(tuple((v, self.var_dim(v)) for v in c.vars))

    def _components(self) -> list[set[str]]:
        """Connected components of the constraint graph (states = edges)."""
        adjacency: dict[str, set[str]] = {c.id: set() for c in self.constraints}
        for s in self.states:
            if s.left in adjacency and s.right in adjacency:
                adjacency[s.left].add(s.right)
                adjacency[s.right].add(s.left)
        seen: set[str] = set()
        comps: list[set[str]] = []
        for start in adjacency:
            if start in seen:
                continue
            comp = {start}
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for w in adjacency[v]:
                    if w not in comp:
                        comp.add(w)
                        queue.append(w)
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self._components()) <= 1

    def is_cycle_free(self) -> bool:
        """Connected and acyclic; multi-edges count as cycles."""
        return self.is_connected() and len(self.states) == max(len(self.constraints), 1) - 1

    def issues(self) -> list[ValidationIssue]:
        """Structural findings; empty means the topology is sound."""
        found: list[ValidationIssue] = []
        seen_ids: set[str] = set()
        for group in (self.symbols, self.states, self.constraints):
            for item in group:
                if item.id in seen_ids:
                    found.append(ValidationIssue(
                        "duplicate-id", f"id {item.id!r} declared more than once", (item.id,)))
                seen_ids.add(item.id)

        known_vars = {s.id for s in self.symbols} | {s.id for s in self.states}
        uses: dict[str, list[str]] = {v: [] for v in known_vars}
        for c in self.constraints:
            local: set[str] = set()
            for v in c.vars:
                if v not in known_vars:
                    found.append(ValidationIssue(
                        "unknown-id", f"constraint {c.id!r} lists undeclared variable {v!r}",
                        (c.id, v)))
                    continue
                if v in local:
                    found.append(ValidationIssue(
                        "normality", f"constraint {c.id!r} lists variable {v!r} twice",
                        (c.id, v)))
                local.add(v)
                uses[v].append(c.id)

        for s in self.symbols:
            if len(uses[s.id]) != 1:
                found.append(ValidationIssue(
                    "normality",
                    f"symbol {s.id!r} must be involved in exactly one constraint, "
                    f"found {len(uses[s.id])}", (s.id, *uses[s.id])))
        cids = {c.id for c in self.constraints}
        for s in self.states:
            if s.left == s.right:
                found.append(ValidationIssue(
                    "self-loop", f"state {s.id!r} has both endpoints at {s.left!r}",
                    (s.id, s.left)))
                continue
            endpoint_issue = False
            for end in (s.left, s.right):
                if end not in cids:
                    found.append(ValidationIssue(
                        "unknown-id", f"state {s.id!r} endpoint {end!r} is not a constraint",
                        (s.id, end)))
                    endpoint_issue = True
            if endpoint_issue:
                continue
            if sorted(uses[s.id]) != sorted((s.left, s.right)):
                found.append(ValidationIssue(
                    "normality",
                    f"state {s.id!r} must be involved in exactly its two endpoints "
                    f"{s.left!r} and {s.right!r}, found {uses[s.id]!r}",
                    (s.id, *uses[s.id])))

        comps = self._components()
        if len(comps) > 1:
            smaller = min(comps, key=len)
            found.append(ValidationIssue(
                "disconnected",
                f"constraint graph has {len(comps)} components; "
                f"one contains {sorted(smaller)!r}", tuple(sorted(smaller))))
        return found


class Realization:
    """Constraint codes wired together over a shared topology."""

    def __init__(self, field: PrimeField, topology: Topology,
                 codes: Mapping[str, BlockedCode]) -> None:
        self.field = field
        self.topology = topology
        self._codes = dict(codes)

    def code(self, cid: str) -> BlockedCode:
        try:
            return self._codes[cid]
        except KeyError:
            raise UnknownBlockError(f"no constraint code for {cid!r}") from None

    @property
    def codes(self) -> dict[str, BlockedCode]:
        return dict(self._codes)

    def total_constraint_dim(self) -> int:
        return sum(c.dim for c in self._codes.values())

    @cached_property
    def _issues(self) -> tuple[ValidationIssue, ...]:
        found = self.topology.issues()
        for c in self.topology.constraints:
            if c.id not in self._codes:
                found.append(ValidationIssue(
                    "missing-code", f"constraint {c.id!r} has no code", (c.id,)))
        for cid in self._codes:
            if not any(c.id == cid for c in self.topology.constraints):
                found.append(ValidationIssue(
                    "unknown-id", f"code given for undeclared constraint {cid!r}", (cid,)))
        if any(i.tag in ("duplicate-id", "unknown-id", "missing-code") for i in found):
            return tuple(found)
        for c in self.topology.constraints:
            code = self._codes[c.id]
            if code.field != self.field:
                found.append(ValidationIssue(
                    "field-mismatch",
                    f"constraint {c.id!r} code is over {code.field!r}, "
                    f"realization over {self.field!r}", (c.id,)))
                continue
            expected = tuple((v, self.topology.var_dim(v)) for v in c.vars)
            if code.structure.blocks != expected:
                found.append(ValidationIssue(
                    "dim-mismatch",
                    f"constraint {c.id!r} code blocks {code.structure.blocks!r} "
                    f"do not match declared {expected!r}", (c.id,)))
        return tuple(found)

    def ensure_valid(self) -> None:
        if self._issues:
            raise InvalidRealizationError(self._issues)

    @cached_property
    def _behavior_code(self) -> BlockedCode:
        self.ensure_valid()
        topo = self.topology
        frame = BlockStructure(tuple(
            (v.id, v.dim) for v in (*topo.symbols, *topo.states)))
        total = frame.total
        stacked: list[np.ndarray] = [np.zeros((0, total), dtype=np.int64)]
        for c in topo.constraints:
            local = self._codes[c.id]
            checks = local.space.orthogonal().basis.array
            emb = np.zeros((checks.shape[0], total), dtype=np.int64)
            at = 0
            for v in c.vars:
                d = topo.var_dim(v)
                emb[:, frame.offset(v):frame.offset(v) + d] = checks[:, at:at + d]
                at += d
            stacked.append(emb)
        system = MatrixF(self.field, np.vstack(stacked))
        return BlockedCode(frame, kernel(system))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Realization):
            return NotImplemented
        return (self.field == other.field and self.topology == other.topology
                and self._codes == other._codes)

    def __repr__(self) -> str:
        t = self.topology
        return (f"<realization over {self.field!r}: {len(t.constraints)} constraints, "
                f"{len(t.states)} states, {len(t.symbols)} symbols>")


@dataclass(frozen=True)
class Behavior:
    """The full solution set of a realization, as a code on symbols+states."""

    realization: Realization
    code: BlockedCode

    @property
    def dim(self) -> int:
        return self.code.dim


@dataclass(frozen=True)
class TrimVerdict:
    """Does one constraint project onto one of its state spaces surjectively?"""

    ok: bool
    constraint_id: str
    state_id: str
    missing: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class ProperVerdict:
    """Does a constraint avoid nonzero codewords supported on one state?"""

    ok: bool
    constraint_id: str
    state_id: str | None = None
    codeword: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate(r: Realization) -> list[ValidationIssue]:
    """All structural findings; an empty list means r is a valid realization."""
    return list(r._issues)


def behavior(r: Realization) -> Behavior:
    """The kernel of the stacked parity systems of all constraint codes."""
    return Behavior(r, r._behavior_code)


def realized_code(r: Realization) -> BlockedCode:
    """Projection of the behavior onto the symbol variables."""
    return r._behavior_code.project(list(r.topology.symbol_ids()))


def unobservable_behavior(r: Realization) -> BlockedCode:
    """State assignments s with (0, s) in the behavior, as a code on states."""
    return r._behavior_code.cross_section(list(r.topology.state_ids()))


def is_observable(r: Realization) -> bool:
    return unobservable_behavior(r).dim == 0


def controllability_defect(r: Realization) -> int:
    """dim B - (sum of constraint dims - total state dim); zero iff controllable."""
    free = r.total_constraint_dim() - r.topology.total_state_dim()
    return r._behavior_code.dim - free


def is_controllable(r: Realization) -> bool:
    return controllability_defect(r) == 0


def is_trim(r: Realization, constraint_id: str, state_id: str) -> TrimVerdict:
    """Trim check for one constraint at one of its states, with witness."""
    r.ensure_valid()
    c = r.topology.constraint(constraint_id)
    if state_id not in c.vars or not r.topology.is_state(state_id):
        raise UnknownBlockError(
            f"state {state_id!r} is not involved in constraint {constraint_id!r}")
    proj = r.code(constraint_id).project([state_id]).space
    d = r.topology.var_dim(state_id)
    if proj.dim == d:
        return TrimVerdict(True, constraint_id, state_id)
    for i in range(d):
        probe = np.zeros(d, dtype=np.int64)
        probe[i] = 1
        if not proj.contains(probe):
            return TrimVerdict(False, constraint_id, state_id, tuple(int(x) for x in probe))
    raise AssertionError("proper subspace with no missing standard vector")


def is_proper(r: Realization, constraint_id: str) -> ProperVerdict:
    """Proper check for one constraint, with an offending codeword if any."""
    r.ensure_valid()
    c = r.topology.constraint(constraint_id)
    code = r.code(constraint_id)
    for v in c.vars:
        if not r.topology.is_state(v):
            continue
        cs = code.cross_section([v])
        if cs.dim == 0:
            continue
        word = np.zeros(code.structure.total, dtype=np.int64)
        at = code.structure.offset(v)
        word[at:at + cs.structure.total] = cs.space.basis.row(0)
        return ProperVerdict(False, constraint_id, v, tuple(int(x) for x in word))
    return ProperVerdict(True, constraint_id)


def is_state_trim(r: Realization) -> bool:
    b = r._behavior_code
    return all(b.project([s.id]).dim == s.dim for s in r.topology.states)


def is_branch_trim(r: Realization) -> bool:
    b = r._behavior_code
    return all(b.project(list(c.vars)).dim == r.code(c.id).dim
               for c in r.topology.constraints)


def is_reduced(r: Realization) -> bool:
    return is_state_trim(r) and is_branch_trim(r)


def dualize(r: Realization) -> Realization:
    """Same topology, orthogonal codes, one sign inversion per state edge.

    The inversion negates the state block inside the dual code of the
    constraint at the state's negate_at endpoint; over GF(2) it is the
    identity. dualize(dualize(r)) has constraint codes equal to r's.
    """
    r.ensure_valid()
    topo = r.topology
    p = r.field.p
    new_codes: dict[str, BlockedCode] = {}
    for c in topo.constraints:
        dual = r.code(c.id).dual()
        scale = np.ones(dual.structure.total, dtype=np.int64)
        for v in c.vars:
            if topo.is_state(v) and topo.state(v).negate_constraint == c.id:
                at = dual.structure.offset(v)
                scale[at:at + topo.var_dim(v)] = p - 1
        if (scale != 1).any():
            rows = (dual.space.basis.array * scale) % p
            dual = BlockedCode.from_rows(r.field, dual.structure, MatrixF(r.field, rows))
        new_codes[c.id] = dual
    return Realization(r.field, topo, new_codes)


@dataclass(frozen=True)
class ConstraintReport:
    """Per-constraint verdicts gathered by analyze()."""

    id: str
    dim: int
    trim: tuple[TrimVerdict, ...]
    proper: ProperVerdict

    @property
    def fully_trim(self) -> bool:
        return all(t.ok for t in self.trim)


@dataclass(frozen=True)
class AnalysisReport:
    """Every dimension and verdict analyze() computes for one realization."""

    field_order: int
    symbol_dims: tuple[tuple[str, int], ...]
    state_dims: tuple[tuple[str, int], ...]
    constraint_dims: tuple[tuple[str, int], ...]
    behavior_dim: int
    realized_dim: int
    unobservable_dim: int
    defect: int
    observable: bool
    controllable: bool
    state_trim: bool
    branch_trim: bool
    reduced: bool
    cycle_free: bool
    minimal: bool | None
    locally_reducible: bool
    constraints: tuple[ConstraintReport, ...]

    @property
    def total_symbol_dim(self) -> int:
        return sum(d for _, d in self.symbol_dims)

    @property
    def total_state_dim(self) -> int:
        return sum(d for _, d in self.state_dims)

    @property
    def total_constraint_dim(self) -> int:
        return sum(d for _, d in self.constraint_dims)

    def to_dict(self) -> dict:
        def trim_dict(t: TrimVerdict) -> dict:
            out = {"state": t.state_id, "ok": t.ok}
            if t.missing is not None:
                out["missing_value"] = list(t.missing)
            return out

        def proper_dict(v: ProperVerdict) -> dict:
            out = {"ok": v.ok}
            if not v.ok:
                out["state"] = v.state_id
                out["codeword"] = list(v.codeword)
            return out

        return {
            "field": self.field_order,
            "symbols": [{"id": i, "dim": d} for i, d in self.symbol_dims],
            "states": [{"id": i, "dim": d} for i, d in self.state_dims],
            "constraints": [
                {"id": c.id, "dim": c.dim,
                 "trim": [trim_dict(t) for t in c.trim],
                 "proper": proper_dict(c.proper)}
                for c in self.constraints
            ],
            "total_symbol_dim": self.total_symbol_dim,
            "total_state_dim": self.total_state_dim,
            "total_constraint_dim": self.total_constraint_dim,
            "behavior_dim": self.behavior_dim,
            "realized_dim": self.realized_dim,
            "unobservable_dim": self.unobservable_dim,
            "controllability_defect": self.defect,
            "observable": self.observable,
            "controllable": self.controllable,
            "state_trim": self.state_trim,
            "branch_trim": self.branch_trim,
            "reduced": self.reduced,
            "cycle_free": self.cycle_free,
            "minimal": self.minimal,
            "locally_reducible": self.locally_reducible,
        }


def analyze(r: Realization) -> AnalysisReport:
    """Compute the full report: dimensions, predicates, and witnesses."""
    r.ensure_valid()
    topo = r.topology
    b = r._behavior_code
    unobs = unobservable_behavior(r).dim
    defect = controllability_defect(r)
    reports = []
    for c in topo.constraints:
        trims = tuple(is_trim(r, c.id, v) for v in c.vars if topo.is_state(v))
        reports.append(ConstraintReport(c.id, r.code(c.id).dim, trims, is_proper(r, c.id)))
    # A trim failure admits a state restriction; a proper failure admits a
    # state merge. Either way some state dimension can be cut in place.
    all_local = all(cr.fully_trim and cr.proper.ok for cr in reports)
    cycle_free = topo.is_cycle_free()
    observable = unobs == 0
    controllable = defect == 0
    return AnalysisReport(
        field_order=r.field.p,
        symbol_dims=tuple((s.id, s.dim) for s in topo.symbols),
        state_dims=tuple((s.id, s.dim) for s in topo.states),
        constraint_dims=tuple((c.id, r.code(c.id).dim) for c in topo.constraints),
        behavior_dim=b.dim,
        realized_dim=realized_code(r).dim,
        unobservable_dim=unobs,
        defect=defect,
        observable=observable,
        controllable=controllable,
        state_trim=is_state_trim(r),
        branch_trim=is_branch_trim(r),
        reduced=is_reduced(r),
        cycle_free=cycle_free,
        minimal=all_local if cycle_free else None,
        locally_reducible=not all_local,
        constraints=tuple(reports),
    )
