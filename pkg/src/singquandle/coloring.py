"""Colorings of singular diagrams by a finite singquandle."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .algebra import AlgebraError, FiniteSingquandle, Table
from .diagram import Classical, SingularDiagram
from .zmod import solve_mod

Coloring = tuple[int, ...]

_SYMBOL = {"star": "*", "starbar": "*bar"}


@dataclass(frozen=True)
class Relation:
    """color[target] == op(color[left], color[right])."""

    op: str        # "star" | "starbar" | "r1" | "r2"
    target: int
    left: int
    right: int


@dataclass(frozen=True)
class ConstraintSystem:
    n_arcs: int
    relations: tuple[Relation, ...]
    structure: FiniteSingquandle
    labels: Optional[tuple[str, ...]] = None

    def table(self, op: str) -> Table:
        return {"star": self.structure.star, "starbar": self.structure.starbar,
                "r1": self.structure.r1, "r2": self.structure.r2}[op]

    def holds(self, rel: Relation, coloring: Sequence[int]) -> bool:
        return self.table(rel.op)[coloring[rel.left]][coloring[rel.right]] == coloring[rel.target]

    def violations(self, coloring: Sequence[int]) -> list[Relation]:
        return [r for r in self.relations if not self.holds(r, coloring)]

    def is_coloring(self, coloring: Sequence[int]) -> bool:
        return len(coloring) == self.n_arcs and not self.violations(coloring)

    def render(self) -> list[str]:
        """Relations as equations on arc labels, e.g. ``x = w *bar R2(x,y)``."""
        name = (lambda a: self.labels[a]) if self.labels else str

        def atom(a: int) -> str:
            s = name(a)
            return f"({s})" if "*" in s else s

        out = []
        for r in self.relations:
            if r.op in _SYMBOL:
                out.append(f"{name(r.target)} = {atom(r.left)} {_SYMBOL[r.op]} {atom(r.right)}")
            else:
                out.append(f"{name(r.target)} = {r.op.upper()}({name(r.left)},{name(r.right)})")
        return out


def build_constraints(d: SingularDiagram, s: FiniteSingquandle) -> ConstraintSystem:
    """One relation per output port of every crossing."""
    if s.starbar is None:
        raise AlgebraError("structure has no inverse operation")
    rels = []
    for c in d.crossings:
        if isinstance(c, Classical):
            op = "star" if c.sign > 0 else "starbar"
            rels.append(Relation(op, c.under_out, c.under_in, c.over))
        else:
            rels.append(Relation("r1", c.out_left, c.in_left, c.in_right))
            rels.append(Relation("r2", c.out_right, c.in_left, c.in_right))
    return ConstraintSystem(d.n_arcs, tuple(rels), s, d.labels)


class _Search:
    """Backtracking with forward propagation.

    Classical relations propagate both ways (the under-in color is recovered
    from the under-out and over colors through the inverse operation);
    singular relations only propagate from inputs to outputs.
    """

    def __init__(self, system: ConstraintSystem):
        s = system.structure
        self.n = s.n
        self.k = system.n_arcs
        inverse = {"star": s.starbar, "starbar": s.star}
        self.rels = [(system.table(r.op), inverse.get(r.op), r.target, r.left, r.right)
                     for r in system.relations]
        self.watch: list[list[int]] = [[] for _ in range(self.k)]
        for i, (_, _, t, a, b) in enumerate(self.rels):
            for arc in {t, a, b}:
                self.watch[arc].append(i)
        degree = [len(w) for w in self.watch]
        self.order = sorted(range(self.k), key=lambda a: (-degree[a], a))

    def _assign(self, color: list[int], arc: int, value: int, trail: list[int]) -> bool:
        color[arc] = value
        trail.append(arc)
        queue = [arc]
        while queue:
            changed = queue.pop()
            for i in self.watch[changed]:
                table, inv, t, a, b = self.rels[i]
                ca, cb, ct = color[a], color[b], color[t]
                if ca >= 0 and cb >= 0:
                    v = table[ca][cb]
                    if ct < 0:
                        color[t] = v
                        trail.append(t)
                        queue.append(t)
                    elif ct != v:
                        return False
                elif inv is not None and ct >= 0 and cb >= 0:
                    # only the under-in color is unknown
                    color[a] = inv[ct][cb]
                    trail.append(a)
                    queue.append(a)
        return True

    def run(self, fixed: Optional[tuple[int, int]] = None) -> list[Coloring]:
        out: list[Coloring] = []
        color = [-1] * self.k
        if self.k == 0:
            return [()]
        if fixed is not None:
            trail: list[int] = []
            if not self._assign(color, fixed[0], fixed[1], trail):
                return out
        self._recurse(color, out)
        return out

    def _recurse(self, color: list[int], out: list[Coloring]):
        arc = next((a for a in self.order if color[a] < 0), None)
        if arc is None:
            out.append(tuple(color))
            return
        for v in range(self.n):
            trail: list[int] = []
            if self._assign(color, arc, v, trail):
                self._recurse(color, out)
            for a in trail:
                color[a] = -1


def _search_branch(args) -> list[Coloring]:
    system, fixed = args
    return _Search(system).run(fixed)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("SINGQ_THREADS", "1")))
    except ValueError:
        return 1


def enumerate_colorings(d: SingularDiagram, s: FiniteSingquandle,
                        workers: Optional[int] = None) -> list[Coloring]:
    """Every coloring of ``d`` by ``s``, sorted lexicographically.

    With ``workers > 1`` the search is split on the color of the first
    branching arc and run in a process pool; the result is identical.
    """
    system = build_constraints(d, s)
    workers = default_workers() if workers is None else workers
    search = _Search(system)
    if workers <= 1 or search.k == 0:
        found = search.run()
    else:
        first = search.order[0]
        tasks = [(system, (first, v)) for v in range(s.n)]
        with ProcessPoolExecutor(max_workers=min(workers, s.n)) as pool:
            found = [c for part in pool.map(_search_branch, tasks) for c in part]
    return sorted(found)


def affine_system(d: SingularDiagram, s: FiniteSingquandle) -> tuple[np.ndarray, np.ndarray]:
    """Coloring conditions of ``d`` as A c = b over Z_n, for an affine ``s``."""
    p = s.affine
    if p is None:
        raise ValueError("structure carries no affine parameters")
    n, a, ai = p.n, p.a, p.a_inv
    cx, cy, k = p.r2_coefficients()
    rows, rhs = [], []
    for c in d.crossings:
        if isinstance(c, Classical):
            t = a if c.sign > 0 else ai
            row = [0] * d.n_arcs
            row[c.under_out] += 1
            row[c.under_in] -= t
            row[c.over] -= 1 - t
            rows.append(row)
            rhs.append(0)
        else:
            for target, (u, v, const) in ((c.out_left, (p.b, p.c, p.d)), (c.out_right, (cx, cy, k))):
                row = [0] * d.n_arcs
                row[target] += 1
                row[c.in_left] -= u
                row[c.in_right] -= v
                rows.append(row)
                rhs.append(const)
    A = np.array(rows, dtype=np.int64).reshape(len(rows), d.n_arcs) % n
    return A, np.array(rhs, dtype=np.int64) % n


def count_colorings_affine(d: SingularDiagram, s: FiniteSingquandle) -> int:
    A, b = affine_system(d, s)
    return solve_mod(A, b, s.n).count
