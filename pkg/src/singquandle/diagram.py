"""Combinatorial oriented singular link diagrams.

A diagram is a set of arcs (integers ``0..k-1``) and a list of crossings.
Arcs run from one under-crossing (or singular vertex) to the next; an
over-arc passes through a classical crossing unchanged.

Port conventions:

* ``Classical(sign, under_in, over, under_out)``: the under-strand enters
  on ``under_in`` and leaves on ``under_out``.  With colors x on the
  incoming under-arc and y on the over-arc the outgoing color is x*y for
  sign +1 and x *bar y for sign -1.
* ``Singular(in_left, in_right, out_left, out_right)``: incoming colors
  (x, y) produce R1(x, y) on ``out_left`` and R2(x, y) on ``out_right``.
  The strands cross, so ``in_left`` continues as ``out_right`` and
  ``in_right`` as ``out_left``.

Text format, one item per line, ``#`` starts a comment::

    P under_in over under_out
    N under_in over under_out
    S in_left in_right out_left out_right
    O arc            # a crossingless circle
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

import networkx as nx


class DiagramError(ValueError):
    pass


class DiagramSyntaxError(DiagramError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DiagramFormatError(DiagramSyntaxError):
    pass


class DiagramIncidenceError(DiagramError):
    pass


@dataclass(frozen=True)
class Classical:
    sign: int
    under_in: int
    over: int
    under_out: int

    @property
    def kind(self) -> str:
        return "positive" if self.sign > 0 else "negative"

    @property
    def arcs(self) -> tuple[int, int, int]:
        return (self.under_in, self.over, self.under_out)

    def relabel(self, f) -> "Classical":
        return Classical(self.sign, f(self.under_in), f(self.over), f(self.under_out))


@dataclass(frozen=True)
class Singular:
    in_left: int
    in_right: int
    out_left: int
    out_right: int

    kind = "singular"

    @property
    def arcs(self) -> tuple[int, int, int, int]:
        return (self.in_left, self.in_right, self.out_left, self.out_right)

    def relabel(self, f) -> "Singular":
        return Singular(f(self.in_left), f(self.in_right), f(self.out_left), f(self.out_right))


Crossing = Union[Classical, Singular]


@dataclass(frozen=True)
class SingularDiagram:
    n_arcs: int
    crossings: tuple[Crossing, ...]
    loops: tuple[int, ...] = ()
    labels: Optional[tuple[str, ...]] = field(default=None, compare=False)

    @property
    def classical(self) -> list[Classical]:
        return [c for c in self.crossings if isinstance(c, Classical)]

    @property
    def singular(self) -> list[Singular]:
        return [c for c in self.crossings if isinstance(c, Singular)]

    def label(self, arc: int) -> str:
        if self.labels is not None:
            return self.labels[arc]
        return str(arc)

    def successor_map(self) -> dict[int, int]:
        """Arc -> next arc along the oriented strand."""
        succ = {}
        for c in self.crossings:
            if isinstance(c, Classical):
                succ[c.under_in] = c.under_out
            else:
                succ[c.in_left] = c.out_right
                succ[c.in_right] = c.out_left
        for a in self.loops:
            succ[a] = a
        return succ

    def component_count(self) -> int:
        succ = self.successor_map()
        seen: set[int] = set()
        count = 0
        for start in range(self.n_arcs):
            if start in seen or start not in succ:
                continue
            count += 1
            a = start
            while a not in seen:
                seen.add(a)
                a = succ.get(a, a)
        return count

    def components(self) -> list[list[int]]:
        succ = self.successor_map()
        seen: set[int] = set()
        out = []
        for start in range(self.n_arcs):
            if start in seen or start not in succ:
                continue
            comp = []
            a = start
            while a not in seen:
                seen.add(a)
                comp.append(a)
                a = succ.get(a, a)
            out.append(comp)
        return out


@dataclass(frozen=True)
class DiagramReport:
    valid: bool
    errors: tuple[str, ...]
    components: Optional[int]

    def __bool__(self) -> bool:
        return self.valid


def validate_diagram(d: SingularDiagram) -> DiagramReport:
    errors = []
    k = d.n_arcs
    produced = [0] * k
    consumed = [0] * k
    for i, c in enumerate(d.crossings):
        for a in c.arcs:
            if not (isinstance(a, int) and 0 <= a < k):
                errors.append(f"crossing {i} refers to unknown arc {a}")
        if errors:
            continue
        if isinstance(c, Classical):
            if c.sign not in (1, -1):
                errors.append(f"crossing {i} has sign {c.sign}, expected +1 or -1")
            consumed[c.under_in] += 1
            produced[c.under_out] += 1
        else:
            if c.in_left == c.in_right or c.out_left == c.out_right:
                errors.append(f"singular crossing {i} repeats an arc end")
            consumed[c.in_left] += 1
            consumed[c.in_right] += 1
            produced[c.out_left] += 1
            produced[c.out_right] += 1
    if errors:
        return DiagramReport(False, tuple(errors), None)
    loops = set()
    for a in d.loops:
        if not 0 <= a < k:
            errors.append(f"loop refers to unknown arc {a}")
            continue
        if a in loops:
            errors.append(f"arc {a} declared as a loop twice")
        loops.add(a)
    for a in range(k):
        p = produced[a] + (a in loops)
        q = consumed[a] + (a in loops)
        if p != 1:
            errors.append(f"arc {a} is produced {p} times")
        if q != 1:
            errors.append(f"arc {a} is consumed {q} times")
    if errors:
        return DiagramReport(False, tuple(errors), None)
    return DiagramReport(True, (), d.component_count())


# -- text format ---------------------------------------------------------------

_TOKEN = re.compile(r"[A-Za-z_]+|-?\d+|[\[\],]|\S")
_ARITY = {"P": 3, "N": 3, "S": 4, "O": 1}


def parse_diagram(text: str) -> SingularDiagram:
    """Parse the line format; arc ids are renumbered to 0..k-1 in increasing order."""
    items = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)
                  if m.group() not in "[],"]
        if not tokens:
            continue
        tag, col = tokens[0]
        if tag not in _ARITY:
            if tag.isalpha():
                raise DiagramFormatError(f"unknown crossing tag {tag!r}", lineno, col)
            raise DiagramSyntaxError(f"expected a crossing tag, found {tag!r}", lineno, col)
        args = []
        for tok, c in tokens[1:]:
            if not re.fullmatch(r"\d+", tok):
                raise DiagramSyntaxError(f"expected a non-negative arc id, found {tok!r}", lineno, c)
            args.append(int(tok))
        if len(args) != _ARITY[tag]:
            end = tokens[-1][1]
            raise DiagramSyntaxError(f"{tag} takes {_ARITY[tag]} arc ids, got {len(args)}", lineno, end)
        items.append((tag, args))

    ids = sorted({a for _, args in items for a in args})
    index = {a: i for i, a in enumerate(ids)}
    crossings: list[Crossing] = []
    loops = []
    for tag, args in items:
        args = [index[a] for a in args]
        if tag == "P":
            crossings.append(Classical(1, *args))
        elif tag == "N":
            crossings.append(Classical(-1, *args))
        elif tag == "S":
            crossings.append(Singular(*args))
        else:
            loops.append(args[0])
    d = SingularDiagram(len(ids), tuple(crossings), tuple(loops))
    report = validate_diagram(d)
    if not report.valid:
        raise DiagramIncidenceError("; ".join(report.errors))
    return d


def serialize_diagram(d: SingularDiagram) -> str:
    lines = []
    if d.labels is not None:
        lines.extend(f"# arc {i}: {lab}" for i, lab in enumerate(d.labels))
    for c in d.crossings:
        if isinstance(c, Classical):
            tag = "P" if c.sign > 0 else "N"
            lines.append(f"{tag} {c.under_in} {c.over} {c.under_out}")
        else:
            lines.append(f"S {c.in_left} {c.in_right} {c.out_left} {c.out_right}")
    lines.extend(f"O {a}" for a in d.loops)
    return "\n".join(lines) + "\n"


def from_named_crossings(rows: Iterable[tuple], loops: Iterable[str] = ()) -> SingularDiagram:
    """Build a diagram from crossings given with symbolic arc names.

    Rows look like ``("N", "w", "R2(x,y)", "x")`` or
    ``("S", "x", "y", "R1(x,y)", "R2(x,y)")``.  Arc ids follow first appearance.
    """
    names: dict[str, int] = {}

    def arc(name: str) -> int:
        return names.setdefault(name, len(names))

    crossings: list[Crossing] = []
    for tag, *args in rows:
        ids = [arc(a) for a in args]
        if tag in ("P", "N"):
            crossings.append(Classical(1 if tag == "P" else -1, *ids))
        elif tag == "S":
            crossings.append(Singular(*ids))
        else:
            raise ValueError(f"unknown crossing tag {tag!r}")
    loop_ids = tuple(arc(a) for a in loops)
    labels = tuple(sorted(names, key=names.get))
    d = SingularDiagram(len(names), tuple(crossings), loop_ids, labels)
    report = validate_diagram(d)
    if not report.valid:
        raise DiagramIncidenceError("; ".join(report.errors))
    return d


def unknot() -> SingularDiagram:
    return SingularDiagram(1, (), (0,), ("x",))


def _graph(d: SingularDiagram) -> nx.DiGraph:
    g = nx.DiGraph()
    for a in range(d.n_arcs):
        g.add_node(("a", a), kind="loop" if a in d.loops else "arc")
    roles = ("under_in", "over", "under_out")
    sroles = ("in_left", "in_right", "out_left", "out_right")
    for i, c in enumerate(d.crossings):
        if isinstance(c, Classical):
            g.add_node(("c", i), kind="P" if c.sign > 0 else "N")
            pairs = zip(roles, c.arcs)
        else:
            g.add_node(("c", i), kind="S")
            pairs = zip(sroles, c.arcs)
        for role, a in pairs:
            edge = g.get_edge_data(("c", i), ("a", a))
            if edge is None:
                g.add_edge(("c", i), ("a", a), roles=(role,))
            else:
                edge["roles"] = tuple(sorted(edge["roles"] + (role,)))
    return g


def isomorphic(d1: SingularDiagram, d2: SingularDiagram) -> bool:
    """Same crossing structure up to relabeling arcs and reordering crossings."""
    if d1.n_arcs != d2.n_arcs or len(d1.crossings) != len(d2.crossings) or len(d1.loops) != len(d2.loops):
        return False
    return nx.is_isomorphic(_graph(d1), _graph(d2),
                            node_match=lambda a, b: a["kind"] == b["kind"],
                            edge_match=lambda a, b: a["roles"] == b["roles"])
