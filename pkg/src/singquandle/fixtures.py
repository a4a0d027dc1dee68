"""Built-in diagrams and structure/cocycle tuples.

Each fixture is written as a crossing list over symbolic arc names.  The
names are the colors the arcs carry in the reference coloring systems, so
an equation ``out = in *bar over`` appears below as ``("N", in, over, out)``
and ``out = in * over`` as ``("P", in, over, out)``.  Where an equation
identifies a variable with a singular output (e.g. ``x = R2(x,y)`` in K1)
the variable names that output arc directly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import FiniteQuandle, FiniteSingquandle, affine_singquandle_tables
from .cocycle import CocyclePair, tabulate_polynomial_weight
from .diagram import SingularDiagram, from_named_crossings

_FIXTURE_ROWS: dict[str, list[tuple]] = {
    "5k1": [
        ("S", "x", "y", "R1(x,y)", "R2(x,y)"),
        ("N", "w", "R2(x,y)", "x"),
        ("N", "z", "R1(x,y)*x", "y"),
        ("N", "R2(x,y)", "w", "z"),
        ("N", "R1(x,y)*x", "z", "w"),
        ("P", "R1(x,y)", "x", "R1(x,y)*x"),
    ],
    "5k8": [
        ("S", "x", "y", "R1(x,y)", "R2(x,y)"),
        ("P", "z", "R1(x,y)*z", "x"),
        ("P", "R2(x,y)", "z", "y"),
        ("P", "w", "y", "z"),
        ("P", "R1(x,y)*z", "x", "w"),
        ("P", "R1(x,y)", "z", "R1(x,y)*z"),
    ],
    "5k6": [
        ("S", "x", "y", "R1(x,y)", "R2(x,y)"),
        ("P", "R1(x,y)*bar y", "w", "x"),
        ("N", "R1(x,y)", "y", "R1(x,y)*bar y"),
        ("P", "w", "z", "y"),
        ("P", "R2(x,y)", "R1(x,y)", "z"),
        ("P", "z", "R1(x,y)*bar y", "w"),
    ],
    "5k7": [
        ("S", "x", "y", "R1(x,y)", "R2(x,y)"),
        ("N", "R1(x,y)", "z", "x"),
        ("P", "z", "R2(x,y)*w", "y"),
        ("P", "R2(x,y)", "w", "R2(x,y)*w"),
        ("P", "w", "R1(x,y)", "z"),
        ("P", "R2(x,y)*w", "y", "w"),
    ],
    # three circles; the outer two meet the middle one in a singular crossing
    # at the top and a classical crossing at the bottom
    "K1": [
        ("S", "x", "y", "R1(x,y)", "x"),
        ("P", "z", "x", "y"),
        ("S", "R1(x,y)", "w", "w", "R2(R1(x,y),w)"),
        ("N", "R2(R1(x,y),w)", "w", "z"),
    ],
    "K2": [
        ("S", "x", "y", "R1(x,y)", "x"),
        ("P", "z", "x", "y"),
        ("S", "R1(x,y)", "w", "R1(R1(x,y),w)", "z"),
        ("P", "R1(R1(x,y),w)", "z", "w"),
    ],
    "K3": [
        ("S", "x", "y", "R1(x,y)", "R2(x,y)"),
        ("S", "w", "z", "R1(w,z)", "R2(w,z)"),
        ("N", "k", "R2(x,y)*bar R1(x,y)", "x"),
        ("N", "R2(x,y)*bar R1(x,y)", "k", "y"),
        ("N", "R2(x,y)", "R1(x,y)", "R2(x,y)*bar R1(x,y)"),
        ("N", "R1(x,y)", "y", "t"),
        ("N", "R2(w,z)*bar t", "R1(w,z)", "z"),
        ("N", "R2(w,z)", "t", "R2(w,z)*bar t"),
        ("N", "t", "z", "w"),
        ("N", "R1(w,z)", "R2(w,z)*bar t", "k"),
    ],
    # K4 differs from K3 only in the position of the second singular crossing
    "K4": [
        ("S", "x", "y", "R1(x,y)", "R2(x,y)"),
        ("S", "w", "z", "R1(w,z)", "R2(w,z)"),
        ("N", "k", "R2(x,y)*bar R1(x,y)", "x"),
        ("N", "R2(x,y)*bar R1(x,y)", "k", "y"),
        ("N", "R2(x,y)", "R1(x,y)", "R2(x,y)*bar R1(x,y)"),
        ("N", "R1(x,y)", "y", "t"),
        ("N", "R1(w,z)", "s", "w"),
        ("N", "s", "t", "z"),
        ("N", "t", "R1(w,z)", "s"),
        ("N", "R2(w,z)", "z", "k"),
    ],
    "square": [
        ("S", "x", "y", "R1(x,y)", "R2(x,y)"),
        ("S", "z", "w", "x", "R2(z,w)"),  # x = R1(z,w)
        ("P", "R2(x,y)", "x", "y"),
        ("P", "R1(x,y)", "R2(x,y)", "R1(x,y)*R2(x,y)"),
        ("N", "R1(x,y)*R2(x,y)", "w", "z"),
        ("N", "R2(z,w)", "x", "w"),
    ],
    "granny": [
        ("S", "x", "y", "R1(x,y)", "R2(x,y)"),
        ("S", "z", "w", "R1(z,w)", "R2(z,w)"),
        ("P", "R1(z,w)", "R2(z,w)", "x"),
        ("P", "R2(x,y)", "x", "y"),
        ("P", "R1(x,y)", "R2(x,y)", "z"),  # z = R1(x,y)*R2(x,y)
        ("P", "R2(z,w)", "z", "w"),
    ],
}

FIXTURE_NAMES = tuple(_FIXTURE_ROWS)

FIXTURE_COMPONENTS = {name: 1 for name in FIXTURE_NAMES} | {"K1": 3, "K2": 3}


class UnknownFixtureError(KeyError):
    pass


def fixture(name: str) -> SingularDiagram:
    try:
        rows = _FIXTURE_ROWS[name]
    except KeyError:
        raise UnknownFixtureError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}") from None
    return from_named_crossings(rows)


@dataclass(frozen=True)
class ReferenceItem:
    """One singquandle with its cocycle pair, given as polynomials."""

    name: str
    n: int
    m: int
    star: str
    starbar: str
    r1: str
    r2: str
    phi: str
    phiprime: str
    affine: tuple[int, int, int, int]   # (a, b, c, d) of the equal affine structure

    def structure(self) -> FiniteSingquandle:
        n = self.n
        star = tabulate_polynomial_weight(n, n, self.star)
        starbar = tabulate_polynomial_weight(n, n, self.starbar)
        r1 = tabulate_polynomial_weight(n, n, self.r1)
        r2 = tabulate_polynomial_weight(n, n, self.r2)
        s = FiniteSingquandle(FiniteQuandle(n, star, starbar), r1, r2)
        affine = affine_singquandle_tables(n, *self.affine)
        if affine == s:
            s = affine
        return s

    def cocycle(self) -> CocyclePair:
        return CocyclePair.from_polynomials(self.n, self.m, self.phi, self.phiprime)


ITEMS = {
    "item1": ReferenceItem("item1", 6, 6, "-x+2y", "-x+2y", "3+2x-y", "3+x",
                           "2x+3x^2-2y-xy-2y^2", "3+x+x^2+2y-xy", (5, 2, 5, 3)),
    "item2": ReferenceItem("item2", 6, 2, "-x+2y", "-x+2y", "3+x", "3+3x+3x^2+y",
                           "y(x+1)", "1+x+xy", (5, 1, 0, 3)),
    "item3": ReferenceItem("item3", 10, 4, "3x-2y", "-3x+4y", "x", "5x+5x^2+y",
                           "(x-y)(y-x)", "1+2x+3x^2+y^2", (3, 1, 0, 0)),
    "item4": ReferenceItem("item4", 10, 4, "3x-2y", "-3x+4y", "3x+8y", "4x+7y",
                           "2(2+3x+3y)^3", "(1+x+y)^5", (3, 3, 8, 0)),
}


@dataclass(frozen=True)
class ExpectedResult:
    fixture: str
    item: str
    colorings: int
    coeffs: tuple[int, ...]


EXPECTED = (
    ExpectedResult("5k1", "item1", 6, (0, 0, 0, 6, 0, 0)),
    ExpectedResult("5k8", "item1", 6, (6, 0, 0, 0, 0, 0)),
    ExpectedResult("5k6", "item1", 6, (0, 0, 0, 6, 0, 0)),
    ExpectedResult("5k7", "item1", 6, (6, 0, 0, 0, 0, 0)),
    ExpectedResult("K1", "item2", 6, (0, 6)),
    ExpectedResult("K2", "item2", 6, (6, 0)),
    ExpectedResult("K3", "item3", 40, (10, 10, 10, 10)),
    ExpectedResult("K4", "item3", 40, (0, 10, 20, 10)),
    ExpectedResult("square", "item4", 1000, (378, 250, 122, 250)),
    ExpectedResult("granny", "item4", 1000, (370, 250, 130, 250)),
)

PAIRS = (("5k1", "5k8"), ("5k6", "5k7"), ("K1", "K2"), ("K3", "K4"), ("square", "granny"))


def item(name: str) -> ReferenceItem:
    try:
        return ITEMS[name]
    except KeyError:
        raise UnknownFixtureError(f"unknown structure {name!r}; known: {', '.join(ITEMS)}") from None
