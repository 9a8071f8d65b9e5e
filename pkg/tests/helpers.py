"""Seeded random instance generators shared across the test modules."""

from __future__ import annotations

import random

import numpy as np

from ncl import (
    BlockedCode,
    BlockStructure,
    Constraint,
    MatrixF,
    PrimeField,
    Realization,
    Span,
    SpannedGenerator,
    StateVar,
    SymbolVar,
    Topology,
    product_trellis,
)


def random_matrix(rng: random.Random, field: PrimeField, rows: int, cols: int) -> MatrixF:
    data = np.array([[rng.randrange(field.p) for _ in range(cols)] for _ in range(rows)],
                    dtype=np.int64).reshape(rows, cols)
    return MatrixF(field, data)


def random_blocked_code(rng: random.Random, field: PrimeField,
                        blocks: tuple[tuple[str, int], ...]) -> BlockedCode:
    structure = BlockStructure(blocks)
    k = rng.randint(0, structure.total + 1)
    return BlockedCode.from_rows(field, structure, random_matrix(rng, field, k, structure.total))


def random_realization(rng: random.Random, field: PrimeField, *,
                       max_constraints: int = 4, max_dim: int = 2,
                       total_cap: int = 12, allow_cycles: bool = True) -> Realization:
    """A structurally valid random realization within a total-dimension cap."""
    while True:
        m = rng.randint(1, max_constraints)
        edges: list[tuple[int, int]] = []
        for i in range(1, m):
            edges.append((rng.randrange(i), i))
        if allow_cycles and m >= 2 and rng.random() < 0.4:
            a, b = rng.sample(range(m), 2)
            edges.append((a, b))

        states = []
        for idx, (a, b) in enumerate(edges):
            negate = rng.choice(("left", "right"))
            states.append(StateVar(f"s{idx}", rng.randint(0, max_dim),
                                   f"c{a}", f"c{b}", negate))
        symbols = []
        attach: dict[int, list[str]] = {i: [] for i in range(m)}
        n_sym = rng.randint(1, max(2, m))
        for k in range(n_sym):
            owner = rng.randrange(m)
            symbols.append(SymbolVar(f"a{k}", rng.randint(0, max_dim)))
            attach[owner].append(f"a{k}")

        total = sum(s.dim for s in states) + sum(a.dim for a in symbols)
        if total > total_cap:
            continue

        constraints = []
        codes = {}
        for i in range(m):
            vars_ = list(attach[i])
            for idx, (a, b) in enumerate(edges):
                if i in (a, b):
                    vars_.append(f"s{idx}")
            rng.shuffle(vars_)
            cid = f"c{i}"
            constraints.append(Constraint(cid, tuple(vars_)))
        dims = {v.id: v.dim for v in symbols} | {v.id: v.dim for v in states}
        topo = Topology(tuple(symbols), tuple(states), tuple(constraints))
        for c in constraints:
            blocks = tuple((v, dims[v]) for v in c.vars)
            codes[c.id] = random_blocked_code(rng, field, blocks)
        return Realization(field, topo, codes)


def random_tree_realization(rng: random.Random, field: PrimeField, *,
                            max_constraints: int = 5, max_dim: int = 2,
                            total_cap: int = 12) -> Realization:
    return random_realization(rng, field, max_constraints=max_constraints,
                              max_dim=max_dim, total_cap=total_cap, allow_cycles=False)


def random_support_matrix(rng: random.Random, field: PrimeField,
                          m: int, n: int) -> list[list[int]]:
    """Rows over GF(p): no zero row or column, connected bipartite support."""
    while True:
        rows = [[rng.randrange(field.p) if rng.random() < 0.6 else 0 for _ in range(n)]
                for _ in range(m)]
        if any(not any(row) for row in rows):
            continue
        if any(all(row[k] == 0 for row in rows) for k in range(n)):
            continue
        parent = list(range(m + n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, row in enumerate(rows):
            for k, v in enumerate(row):
                if v:
                    parent[find(m + k)] = find(i)
        if len({find(x) for x in range(m + n)}) == 1:
            return rows


def random_spanned_generator(rng: random.Random, field: PrimeField, n: int,
                             *, allow_degenerate: bool = True) -> SpannedGenerator:
    if allow_degenerate and rng.random() < 0.3:
        span = Span(degenerate=True)
        covered = list(range(n))
    else:
        start = rng.randrange(n)
        end = (start + rng.randrange(n)) % n
        span = Span(start, end)
        covered = span.covered(n)
    vec = [0] * n
    for k in covered:
        vec[k] = rng.randrange(field.p)
    if not any(vec):
        vec[rng.choice(covered)] = rng.randrange(1, field.p)
    return SpannedGenerator(tuple(vec), span)


def random_tail_biting_product(rng: random.Random, field: PrimeField, *,
                               max_n: int = 8, max_gens: int = 4,
                               allow_degenerate: bool = True) -> Realization:
    n = rng.randint(2, max_n)
    m = rng.randint(1, max_gens)
    gens = [random_spanned_generator(rng, field, n, allow_degenerate=allow_degenerate)
            for _ in range(m)]
    return product_trellis(field, n, gens, "tail-biting")
