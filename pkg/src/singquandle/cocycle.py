"""Cocycle pairs (phi, phi') with values in Z_m.

``phi`` is the weight of a classical crossing and ``phiprime`` the weight of
a singular crossing.  A pair is admissible for a singquandle when it
satisfies, for all x, y, z (with ``/`` for the inverse operation)::

    diagonal      phi(x,x) = 0
    two-cocycle   phi(x,y) + phi(x*y,z) = phi(x,z) + phi(x*z,y*z)
    slide-weight  -phi(x/y,y) + phi'(x/y,z) + phi(R1(x/y,z),y)
                      = phi(z,y) + phi'(x,z*y) - phi(R2(x,z*y)/y,y)
    pass-weight   phi(y/R1(x,z),x) - phi(y/R1(x,z),R1(x,z))
                      = -phi((y*R2(x,z))/z,z) + phi(y,R2(x,z))
    twist-weight  phi'(x,y) + phi(R1(x,y),R2(x,y)) = phi(x,y) + phi'(y,x*y)

Every condition is linear in the table entries, so the admissible pairs
form a Z_m-module that :func:`solve_cocycle_space` describes exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Union

import numpy as np

from .algebra import FiniteSingquandle, MalformedTableError, Table, VerificationReport, first_violation
from .zmod import ModularSolution, kernel_mod

Polynomial = dict[tuple[int, int], int]

COCYCLE_CONDITIONS = ("diagonal", "two-cocycle", "slide-weight", "pass-weight", "twist-weight")


def parse_polynomial(text: str) -> Polynomial:
    """Parse a bivariate integer polynomial in x and y, e.g. ``"2(2+3x+3y)^3"``."""
    from sympy import Poly, symbols
    from sympy.parsing.sympy_parser import (convert_xor, implicit_multiplication_application,
                                            parse_expr, standard_transformations)

    x, y = symbols("x y")
    transformations = standard_transformations + (implicit_multiplication_application, convert_xor)
    expr = parse_expr(text.replace("−", "-"), local_dict={"x": x, "y": y},
                      transformations=transformations)
    poly = Poly(expr.expand(), x, y)
    out = {}
    for (i, j), c in poly.terms():
        if not c.is_integer:
            raise ValueError(f"non-integer coefficient {c} in {text!r}")
        out[(int(i), int(j))] = int(c)
    return out


def coefficients_from_json(data) -> Polynomial:
    """Accept a polynomial string, a {"i,j": c} map or a list of [i, j, c] triples."""
    if isinstance(data, str):
        return parse_polynomial(data)
    if isinstance(data, Mapping):
        out = {}
        for key, c in data.items():
            i, j = (int(t) for t in str(key).split(","))
            out[(i, j)] = out.get((i, j), 0) + int(c)
        return out
    return {(int(i), int(j)): int(c) for i, j, c in data}


def tabulate_polynomial_weight(n: int, m: int, expression: Union[str, Mapping, list]) -> Table:
    """Table of expression(x, y) mod m, with x, y the integer representatives 0..n-1."""
    coeffs = expression if isinstance(expression, dict) and all(
        isinstance(k, tuple) for k in expression) else coefficients_from_json(expression)
    return tuple(
        tuple(sum(c * x ** i * y ** j for (i, j), c in coeffs.items()) % m for y in range(n))
        for x in range(n))


@dataclass(frozen=True)
class CocyclePair:
    m: int
    phi: Table
    phiprime: Table

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise MalformedTableError(f"coefficient modulus must be a positive integer, got {self.m!r}")
        for name in ("phi", "phiprime"):
            table = tuple(tuple(int(v) % self.m for v in row) for row in getattr(self, name))
            object.__setattr__(self, name, table)
        n = len(self.phi)
        if any(len(r) != n for r in self.phi) or len(self.phiprime) != n or any(
                len(r) != n for r in self.phiprime):
            raise MalformedTableError("phi and phiprime must both be n x n tables")

    @property
    def n(self) -> int:
        return len(self.phi)

    @classmethod
    def zero(cls, n: int, m: int) -> "CocyclePair":
        z = tuple((0,) * n for _ in range(n))
        return cls(m, z, z)

    @classmethod
    def from_polynomials(cls, n: int, m: int, phi, phiprime) -> "CocyclePair":
        return cls(m, tabulate_polynomial_weight(n, m, phi), tabulate_polynomial_weight(n, m, phiprime))

    @classmethod
    def from_vector(cls, n: int, m: int, vec) -> "CocyclePair":
        vec = list(vec)
        nn = n * n
        phi = tuple(tuple(vec[x * n:(x + 1) * n]) for x in range(n))
        php = tuple(tuple(vec[nn + x * n:nn + (x + 1) * n]) for x in range(n))
        return cls(m, phi, php)

    def to_vector(self) -> tuple[int, ...]:
        return tuple(v for row in self.phi for v in row) + tuple(v for row in self.phiprime for v in row)


def cocycle_from_json(data: Mapping, n: int) -> CocyclePair:
    if not isinstance(data, Mapping) or "m" not in data:
        raise MalformedTableError("cocycle must be an object with an 'm' field")
    m = data["m"]
    if "phi" in data:
        pair = CocyclePair(m, data["phi"], data["phiprime"])
        if pair.n != n:
            raise MalformedTableError(f"cocycle tables have size {pair.n}, structure has {n}")
        return pair
    if "phi_poly" in data:
        return CocyclePair.from_polynomials(n, m, data["phi_poly"], data["phiprime_poly"])
    raise MalformedTableError("cocycle needs tables or polynomial forms")


def cocycle_to_json(p: CocyclePair) -> dict:
    return {"m": p.m, "phi": [list(r) for r in p.phi], "phiprime": [list(r) for r in p.phiprime]}


def _require_dims(s: FiniteSingquandle, p: CocyclePair):
    if p.n != s.n:
        raise MalformedTableError(f"cocycle tables are {p.n}x{p.n} but the structure has {s.n} elements")
    if s.starbar is None:
        raise MalformedTableError("structure has no inverse operation")


def verify_cocycle_pair(s: FiniteSingquandle, p: CocyclePair) -> VerificationReport:
    _require_dims(s, p)
    n, m = s.n, p.m
    S = np.array(s.star, dtype=np.int64)
    B = np.array(s.starbar, dtype=np.int64)
    R1 = np.array(s.r1, dtype=np.int64)
    R2 = np.array(s.r2, dtype=np.int64)
    f = np.array(p.phi, dtype=np.int64)
    g = np.array(p.phiprime, dtype=np.int64)
    X = np.arange(n)
    x, y, z = np.meshgrid(X, X, X, indexing="ij")
    u, v = np.meshgrid(X, X, indexing="ij")

    diag = f[X, X] % m == 0
    cocycle = (f[x, y] + f[S[x, y], z] - f[x, z] - f[S[x, z], S[y, z]]) % m == 0
    xb = B[x, y]
    lhs = -f[xb, y] + g[xb, z] + f[R1[xb, z], y]
    rhs = f[z, y] + g[x, S[z, y]] - f[B[R2[x, S[z, y]], y], y]
    slide = (lhs - rhs) % m == 0
    yb = B[y, R1[x, z]]
    lhs = f[yb, x] - f[yb, R1[x, z]]
    rhs = -f[B[S[y, R2[x, z]], z], z] + f[y, R2[x, z]]
    passing = (lhs - rhs) % m == 0
    twist = (g[u, v] + f[R1[u, v], R2[u, v]] - f[u, v] - g[v, S[u, v]]) % m == 0
    results = tuple((name, first_violation(h)) for name, h in
                    zip(COCYCLE_CONDITIONS, (diag, cocycle, slide, passing, twist)))
    return VerificationReport("cocycle pair", results)


@dataclass(frozen=True)
class LinearSystemZm:
    """Homogeneous linear conditions on the 2n^2 table entries of a cocycle pair.

    Unknown phi(x, y) has index x*n + y and phiprime(x, y) has index
    n*n + x*n + y.  ``labels[i]`` names the condition and instantiation that
    produced row i.
    """

    n: int
    m: int
    coefficients: np.ndarray
    constants: np.ndarray
    labels: tuple[tuple, ...]

    @property
    def n_unknowns(self) -> int:
        return 2 * self.n * self.n

    @property
    def rows(self) -> list[tuple[tuple[int, ...], int]]:
        return [(tuple(int(c) for c in row), int(k)) for row, k in zip(self.coefficients, self.constants)]

    def rows_for(self, condition: str) -> np.ndarray:
        idx = [i for i, lab in enumerate(self.labels) if lab[0] == condition]
        return self.coefficients[idx]

    def is_satisfied(self, vec) -> bool:
        vec = np.asarray(vec, dtype=np.int64)
        return bool(np.all((self.coefficients @ vec - self.constants) % self.m == 0))


def build_cocycle_system(s: FiniteSingquandle, m: int) -> LinearSystemZm:
    n = s.n
    if s.starbar is None:
        raise MalformedTableError("structure has no inverse operation")
    S, B, R1, R2 = s.star, s.starbar, s.r1, s.r2
    nn = n * n

    def phi(a, b):
        return a * n + b

    def php(a, b):
        return nn + a * n + b

    rows: list[list[tuple[int, int]]] = []
    labels: list[tuple] = []

    def add(label, terms):
        rows.append(terms)
        labels.append(label)

    for x in range(n):
        add(("diagonal", x), [(phi(x, x), 1)])
    for x in range(n):
        for y in range(n):
            for z in range(n):
                add(("two-cocycle", x, y, z),
                    [(phi(x, y), 1), (phi(S[x][y], z), 1), (phi(x, z), -1), (phi(S[x][z], S[y][z]), -1)])
    for x in range(n):
        for y in range(n):
            for z in range(n):
                xb = B[x][y]
                add(("slide-weight", x, y, z),
                    [(phi(xb, y), -1), (php(xb, z), 1), (phi(R1[xb][z], y), 1),
                     (phi(z, y), -1), (php(x, S[z][y]), -1), (phi(B[R2[x][S[z][y]]][y], y), 1)])
    for x in range(n):
        for y in range(n):
            for z in range(n):
                yb = B[y][R1[x][z]]
                add(("pass-weight", x, y, z),
                    [(phi(yb, x), 1), (phi(yb, R1[x][z]), -1),
                     (phi(B[S[y][R2[x][z]]][z], z), 1), (phi(y, R2[x][z]), -1)])
    for x in range(n):
        for y in range(n):
            add(("twist-weight", x, y),
                [(php(x, y), 1), (phi(R1[x][y], R2[x][y]), 1), (phi(x, y), -1), (php(y, S[x][y]), -1)])

    coeffs = np.zeros((len(rows), 2 * nn), dtype=np.int64)
    for i, terms in enumerate(rows):
        for j, c in terms:
            coeffs[i, j] += c
    coeffs %= m
    return LinearSystemZm(n, m, coeffs, np.zeros(len(rows), dtype=np.int64), tuple(labels))


@dataclass(frozen=True)
class CocycleSpace:
    """All admissible cocycle pairs for one singquandle and modulus.

    The particular solution is always zero; ``generators`` with their
    additive ``orders`` decompose the solution module as a direct sum.
    """

    n: int
    m: int
    solution: ModularSolution

    @property
    def count(self) -> int:
        return self.solution.count

    @property
    def generators(self) -> list[CocyclePair]:
        return [CocyclePair.from_vector(self.n, self.m, g) for g in self.solution.generators]

    @property
    def orders(self) -> tuple[int, ...]:
        return self.solution.orders

    def iter_pairs(self, limit: Optional[int] = 100_000) -> Iterator[CocyclePair]:
        for vec in self.solution.iter_solutions(limit):
            yield CocyclePair.from_vector(self.n, self.m, vec)

    def combination(self, coeffs) -> CocyclePair:
        vec = np.zeros(2 * self.n * self.n, dtype=np.int64)
        for c, g in zip(coeffs, self.solution.generators):
            vec = (vec + int(c) * np.array(g, dtype=np.int64)) % self.m
        return CocyclePair.from_vector(self.n, self.m, vec)


def solve_cocycle_space(system: LinearSystemZm) -> CocycleSpace:
    sol = kernel_mod(system.coefficients, system.m, system.n_unknowns)
    return CocycleSpace(system.n, system.m, sol)
