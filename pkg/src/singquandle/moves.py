"""Classical Reidemeister I and II moves as diagram rewrites.

Insertions happen at the end of an arc, just before the crossing that
consumes it, so every over-passage of the original arc stays on the first
piece.  Deletions merge arcs that any coloring forces to carry the same
color.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .diagram import Classical, Crossing, Singular, SingularDiagram, validate_diagram

MOVE_KINDS = ("R1_insert", "R1_delete", "R2_insert", "R2_delete")


class MoveRejectedError(ValueError):
    pass


@dataclass(frozen=True)
class MoveSpec:
    """A single move.

    ``target`` holds arc ids for insertions (one arc for R1, the over arc
    and then the under arc for R2) and crossing indices for deletions.
    ``sign`` is the kink sign for R1 and the sign of the first of the two
    new crossings for R2.  ``over_first`` picks which R1 kink shape to
    insert: the new loop passes over the crossing before or after it
    passes under.
    """

    kind: str
    target: tuple[int, ...]
    sign: int = 1
    over_first: bool = False


def _replace_consumer(crossings: list[Crossing], loops: list[int], arc: int, new: int) -> None:
    """Make the crossing that consumed ``arc`` consume ``new`` instead."""
    for i, c in enumerate(crossings):
        if isinstance(c, Classical) and c.under_in == arc:
            crossings[i] = Classical(c.sign, new, c.over, c.under_out)
            return
        if isinstance(c, Singular) and arc in (c.in_left, c.in_right):
            if c.in_left == arc:
                crossings[i] = Singular(new, c.in_right, c.out_left, c.out_right)
            else:
                crossings[i] = Singular(c.in_left, new, c.out_left, c.out_right)
            return
    raise MoveRejectedError(f"arc {arc} has no consumer")


def _compact(n_arcs: int, crossings, loops) -> SingularDiagram:
    used = sorted({a for c in crossings for a in c.arcs} | set(loops))
    index = {a: i for i, a in enumerate(used)}
    d = SingularDiagram(len(used), tuple(c.relabel(index.__getitem__) for c in crossings),
                        tuple(index[a] for a in loops))
    return d


def _merge(crossings: list[Crossing], loops: list[int], keep: int, drop: int):
    f = (lambda a: keep if a == drop else a)
    return [c.relabel(f) for c in crossings], [f(a) for a in loops]


def _r1_insert(d: SingularDiagram, mv: MoveSpec) -> SingularDiagram:
    (arc,) = mv.target
    crossings, loops = list(d.crossings), list(d.loops)
    if arc in loops:
        # the circle becomes a one-crossing kink
        loops.remove(arc)
        crossings.append(Classical(mv.sign, arc, arc, arc))
        return _compact(d.n_arcs, crossings, loops)
    new = d.n_arcs
    _replace_consumer(crossings, loops, arc, new)
    if mv.over_first:
        # arc passes over the new crossing, loops round and goes under it
        crossings.append(Classical(mv.sign, arc, arc, new))
    else:
        # arc goes under, the loop comes back over the same crossing
        crossings.append(Classical(mv.sign, arc, new, new))
    return _compact(d.n_arcs + 1, crossings, loops)


def _is_kink(c: Crossing) -> bool:
    return isinstance(c, Classical) and c.over in (c.under_in, c.under_out)


def _r1_delete(d: SingularDiagram, mv: MoveSpec) -> SingularDiagram:
    (idx,) = mv.target
    c = d.crossings[idx]
    if not _is_kink(c):
        raise MoveRejectedError(f"crossing {idx} is not a kink")
    crossings = [x for i, x in enumerate(d.crossings) if i != idx]
    loops = list(d.loops)
    if c.under_in == c.under_out:
        loops.append(c.under_in)
        return _compact(d.n_arcs, crossings, loops)
    crossings, loops = _merge(crossings, loops, c.under_in, c.under_out)
    # the merged arc is now consumed where under_out used to be consumed
    return _compact(d.n_arcs, crossings, loops)


def _r2_insert(d: SingularDiagram, mv: MoveSpec) -> SingularDiagram:
    over, under = mv.target
    if over == under:
        raise MoveRejectedError("R2 needs two distinct arcs")
    crossings, loops = list(d.crossings), list(d.loops)
    mid = d.n_arcs
    if under in loops:
        loops.remove(under)
        last = under
    else:
        last = d.n_arcs + 1
        _replace_consumer(crossings, loops, under, last)
    crossings.append(Classical(mv.sign, under, over, mid))
    crossings.append(Classical(-mv.sign, mid, over, last))
    return _compact(d.n_arcs + 2, crossings, loops)


def _r2_pair(d: SingularDiagram, i: int, j: int) -> bool:
    a, b = d.crossings[i], d.crossings[j]
    if not (isinstance(a, Classical) and isinstance(b, Classical)):
        return False
    if a.sign != -b.sign or a.over != b.over or a.under_out != b.under_in:
        return False
    mid = a.under_out
    if mid == a.over:
        return False
    return not any(isinstance(c, Classical) and c.over == mid for c in d.crossings)


def _r2_delete(d: SingularDiagram, mv: MoveSpec) -> SingularDiagram:
    i, j = mv.target
    if i == j or not _r2_pair(d, i, j):
        raise MoveRejectedError(f"crossings {i} and {j} do not form an R2 bigon")
    a, b = d.crossings[i], d.crossings[j]
    crossings = [c for k, c in enumerate(d.crossings) if k not in (i, j)]
    loops = list(d.loops)
    if b.under_out == a.under_in:
        loops.append(a.under_in)
        return _compact(d.n_arcs, crossings, loops)
    crossings, loops = _merge(crossings, loops, a.under_in, b.under_out)
    return _compact(d.n_arcs, crossings, loops)


_APPLY = {"R1_insert": _r1_insert, "R1_delete": _r1_delete,
          "R2_insert": _r2_insert, "R2_delete": _r2_delete}


def apply_move(d: SingularDiagram, mv: MoveSpec) -> SingularDiagram:
    if mv.kind not in _APPLY:
        raise MoveRejectedError(f"unknown move {mv.kind!r}")
    if mv.sign not in (1, -1):
        raise MoveRejectedError(f"sign must be +1 or -1, got {mv.sign}")
    if mv.kind.endswith("insert"):
        for a in mv.target:
            if not 0 <= a < d.n_arcs:
                raise MoveRejectedError(f"no arc {a}")
    else:
        for i in mv.target:
            if not 0 <= i < len(d.crossings):
                raise MoveRejectedError(f"no crossing {i}")
    try:
        out = _APPLY[mv.kind](d, mv)
    except ValueError as exc:
        if isinstance(exc, MoveRejectedError):
            raise
        raise MoveRejectedError(f"malformed target {mv.target!r} for {mv.kind}") from exc
    report = validate_diagram(out)
    if not report.valid:
        raise MoveRejectedError("move produced an invalid diagram: " + "; ".join(report.errors))
    return out


def available_moves(d: SingularDiagram, rng: random.Random) -> list[MoveSpec]:
    """One random candidate per applicable move kind."""
    out = []
    if d.n_arcs:
        out.append(MoveSpec("R1_insert", (rng.randrange(d.n_arcs),),
                            rng.choice((1, -1)), rng.random() < 0.5))
    if d.n_arcs >= 2:
        over, under = rng.sample(range(d.n_arcs), 2)
        out.append(MoveSpec("R2_insert", (over, under), rng.choice((1, -1))))
    kinks = [i for i, c in enumerate(d.crossings) if _is_kink(c)]
    if kinks:
        out.append(MoveSpec("R1_delete", (rng.choice(kinks),)))
    pairs = [(i, j) for i in range(len(d.crossings)) for j in range(len(d.crossings))
             if i != j and _r2_pair(d, i, j)]
    if pairs:
        out.append(MoveSpec("R2_delete", rng.choice(pairs)))
    return out


def random_move_walk(d: SingularDiagram, seed: int, steps: int) -> SingularDiagram:
    if steps < 0:
        raise ValueError("steps must be non-negative")
    rng = random.Random(seed)
    for _ in range(steps):
        candidates = available_moves(d, rng)
        if not candidates:
            break
        d = apply_move(d, rng.choice(candidates))
    return d
