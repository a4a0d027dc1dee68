"""Finite quandles and oriented singquandles as explicit operation tables.

Elements of every structure are the integers ``0..n-1``.  Tables are stored
as tuples of tuples so structures are hashable and immutable; verification
runs over numpy copies of the tables so that the O(n^3) axiom checks stay
fast for the carrier sizes used in practice (n <= 12 or so).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Mapping, Optional, Sequence

import numpy as np

Table = tuple[tuple[int, ...], ...]


class AlgebraError(ValueError):
    pass


class InvalidSizeError(AlgebraError):
    pass


class MalformedTableError(AlgebraError):
    pass


class NonUnitError(AlgebraError):
    pass


class NotAGroupError(AlgebraError):
    pass


class NotAutomorphismError(AlgebraError):
    pass


class AffineConditionError(AlgebraError):
    def __init__(self, message, value, constant_value=0):
        super().__init__(message)
        self.value = value
        self.constant_value = constant_value


def _as_table(rows, n: int, name: str) -> Table:
    try:
        table = tuple(tuple(int(v) for v in row) for row in rows)
    except (TypeError, ValueError) as exc:
        raise MalformedTableError(f"{name}: not a table of integers") from exc
    if len(table) != n or any(len(row) != n for row in table):
        raise MalformedTableError(f"{name}: expected a {n}x{n} table")
    for x, row in enumerate(table):
        for y, v in enumerate(row):
            if not 0 <= v < n:
                raise MalformedTableError(f"{name}[{x}][{y}] = {v} is outside 0..{n - 1}")
    return table


def _check_size(n) -> int:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidSizeError(f"carrier size must be a positive integer, got {n!r}")
    return int(n)


def _tabulate(n: int, f) -> Table:
    return tuple(tuple(f(x, y) % n for y in range(n)) for x in range(n))


def _invert_columns(star: Table) -> Optional[Table]:
    """Table of x ∗̄ y, or None when some right multiplication is not a bijection."""
    n = len(star)
    inv = [[-1] * n for _ in range(n)]
    for y in range(n):
        for x in range(n):
            z = star[x][y]
            if inv[z][y] != -1:
                return None
            inv[z][y] = x
    return tuple(tuple(row) for row in inv)


@dataclass(frozen=True)
class FiniteQuandle:
    """Binary operation ``star`` on 0..n-1 together with its right inverse.

    ``starbar`` is ``None`` when the columns of ``star`` are not bijections;
    such an object is not a quandle, but it can still be handed to
    :func:`verify_quandle` to find out why.
    """

    n: int
    star: Table
    starbar: Optional[Table]

    def __post_init__(self):
        n = _check_size(self.n)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "star", _as_table(self.star, n, "star"))
        if self.starbar is not None:
            object.__setattr__(self, "starbar", _as_table(self.starbar, n, "starbar"))

    @classmethod
    def from_star(cls, star) -> "FiniteQuandle":
        rows = [list(r) for r in star]
        n = len(rows)
        table = _as_table(rows, n, "star")
        return cls(n, table, _invert_columns(table))

    def op(self, x: int, y: int) -> int:
        return self.star[x][y]

    def inv(self, x: int, y: int) -> int:
        if self.starbar is None:
            raise AlgebraError("right multiplication is not invertible")
        return self.starbar[x][y]


@dataclass(frozen=True)
class AffineParams:
    """x*y = a x + (1-a) y,  R1(x,y) = d + b x + c y  over Z_n."""

    n: int
    a: int
    b: int
    c: int
    d: int = 0

    @property
    def a_inv(self) -> int:
        return pow(self.a, -1, self.n) if self.n > 1 else 0

    def r2_coefficients(self) -> tuple[int, int, int]:
        """(coefficient of x, coefficient of y, constant) of R2 = R1(y, x*y)."""
        n, a, b, c, d = self.n, self.a, self.b, self.c, self.d
        return (a * c) % n, (b + c * (1 - a)) % n, d % n


@dataclass(frozen=True)
class FiniteSingquandle:
    base: FiniteQuandle
    r1: Table
    r2: Table
    affine: Optional[AffineParams] = field(default=None, compare=False)

    def __post_init__(self):
        n = self.base.n
        object.__setattr__(self, "r1", _as_table(self.r1, n, "r1"))
        object.__setattr__(self, "r2", _as_table(self.r2, n, "r2"))

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def star(self) -> Table:
        return self.base.star

    @property
    def starbar(self) -> Optional[Table]:
        return self.base.starbar

    @classmethod
    def from_tables(cls, star, r1, r2) -> "FiniteSingquandle":
        return cls(FiniteQuandle.from_star(star), r1, r2)


# -- verification reports ----------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of an exhaustive axiom check.

    ``results`` maps each condition name to ``None`` (holds everywhere) or to
    the lexicographically first tuple of arguments at which it fails.
    """

    subject: str
    results: tuple[tuple[str, Optional[tuple[int, ...]]], ...]

    @property
    def ok(self) -> bool:
        return all(cex is None for _, cex in self.results)

    def __bool__(self) -> bool:
        return self.ok

    def counterexample(self, name: str) -> Optional[tuple[int, ...]]:
        return dict(self.results)[name]

    def failures(self) -> list[str]:
        return [name for name, cex in self.results if cex is not None]

    def lines(self) -> list[str]:
        out = []
        for name, cex in self.results:
            if cex is None:
                out.append(f"{name}: pass")
            elif cex == ():
                out.append(f"{name}: FAIL (inverse operation undefined)")
            else:
                out.append(f"{name}: FAIL at {cex}")
        return out

    def __str__(self) -> str:
        return "\n".join([f"{self.subject}:"] + ["  " + s for s in self.lines()])


def first_violation(holds: np.ndarray) -> Optional[tuple[int, ...]]:
    """Index of the first False entry in C order (= lexicographic), else None."""
    bad = np.argwhere(~np.asarray(holds, dtype=bool))
    if len(bad) == 0:
        return None
    return tuple(int(v) for v in bad[0])


def _grids(n: int, k: int):
    return np.meshgrid(*([np.arange(n)] * k), indexing="ij")


def verify_quandle(q: FiniteQuandle) -> VerificationReport:
    n = q.n
    S = np.array(q.star, dtype=np.int64)
    x, y = _grids(n, 2)
    results = [("idempotence", first_violation(S[np.arange(n), np.arange(n)] == np.arange(n)))]

    collision = None
    for col in range(n):
        seen = {}
        for row in range(n):
            v = q.star[row][col]
            if v in seen:
                cand = (seen[v], row, col)
                if collision is None or cand < collision:
                    collision = cand
                break
            seen[v] = row
    # reported as (x, x', y) with x*y == x'*y
    results.append(("right-invertibility", collision))

    if q.starbar is not None:
        B = np.array(q.starbar, dtype=np.int64)
        holds = (B[S[x, y], y] == x) & (S[B[x, y], y] == x)
        results.append(("starbar-inverse", first_violation(holds)))
    else:
        results.append(("starbar-inverse", collision))

    x3, y3, z3 = _grids(n, 3)
    holds = S[S[x3, y3], z3] == S[S[x3, z3], S[y3, z3]]
    results.append(("self-distributivity", first_violation(holds)))
    return VerificationReport("quandle", tuple(results))


SINGQUANDLE_AXIOMS = ("r1-slide", "r2-slide", "strand-slide", "r2-from-r1", "output-product")


def verify_singquandle(s: FiniteSingquandle) -> VerificationReport:
    """Check the quandle axioms and the five singular axioms exhaustively.

    With ``/`` for the inverse operation::

        r1-slide        R1(x/y,z)*y = R1(x,z*y)
        r2-slide        R2(x/y,z) = R2(x,z*y)/y
        strand-slide    (y/R1(x,z))*x = (y*R2(x,z))/z
        r2-from-r1      R2(x,y) = R1(y,x*y)
        output-product  R1(x,y)*R2(x,y) = R2(y,x*y)
    """
    base = verify_quandle(s.base)
    results = list(base.results)
    n = s.n
    S = np.array(s.star, dtype=np.int64)
    P = np.array(s.r1, dtype=np.int64)
    Q = np.array(s.r2, dtype=np.int64)
    if s.starbar is None:
        # the three slide axioms need the inverse operation, which does not exist here
        results.extend((name, ()) for name in SINGQUANDLE_AXIOMS[:3])
    else:
        B = np.array(s.starbar, dtype=np.int64)
        x, y, z = _grids(n, 3)
        results.append(("r1-slide", first_violation(S[P[B[x, y], z], y] == P[x, S[z, y]])))
        results.append(("r2-slide", first_violation(Q[B[x, y], z] == B[Q[x, S[z, y]], y])))
        results.append(("strand-slide", first_violation(S[B[y, P[x, z]], x] == B[S[y, Q[x, z]], z])))
    u, v = _grids(n, 2)
    results.append(("r2-from-r1", first_violation(Q[u, v] == P[v, S[u, v]])))
    results.append(("output-product", first_violation(S[P[u, v], Q[u, v]] == Q[v, S[u, v]])))
    return VerificationReport("singquandle", tuple(results))


# -- constructors ------------------------------------------------------------


def make_trivial_quandle(n: int) -> FiniteQuandle:
    n = _check_size(n)
    star = _tabulate(n, lambda x, y: x)
    return FiniteQuandle(n, star, star)


def make_dihedral_quandle(n: int) -> FiniteQuandle:
    n = _check_size(n)
    star = _tabulate(n, lambda x, y: 2 * y - x)
    return FiniteQuandle(n, star, star)


def _require_unit(t: int, n: int, what: str = "t") -> int:
    if gcd(t, n) != 1:
        raise NonUnitError(f"{what}={t} is not invertible modulo {n}")
    return t % n


def make_alexander_quandle(n: int, t: int) -> FiniteQuandle:
    n = _check_size(n)
    t = _require_unit(t, n)
    ti = pow(t, -1, n) if n > 1 else 0
    star = _tabulate(n, lambda x, y: t * x + (1 - t) * y)
    starbar = _tabulate(n, lambda x, y: ti * x + (1 - ti) * y)
    return FiniteQuandle(n, star, starbar)


def _check_group(table) -> tuple[Table, int, list[int]]:
    rows = [list(r) for r in table]
    n = len(rows)
    if n == 0:
        raise NotAGroupError("empty multiplication table")
    try:
        mul = _as_table(rows, n, "group table")
    except MalformedTableError as exc:
        raise NotAGroupError(str(exc)) from exc
    identity = next((e for e in range(n)
                     if all(mul[e][g] == g and mul[g][e] == g for g in range(n))), None)
    if identity is None:
        raise NotAGroupError("no identity element")
    inverse = []
    for g in range(n):
        h = next((h for h in range(n) if mul[g][h] == identity), None)
        if h is None or mul[h][g] != identity:
            raise NotAGroupError(f"element {g} has no two-sided inverse")
        inverse.append(h)
    M = np.array(mul, dtype=np.int64)
    x, y, z = _grids(n, 3)
    bad = first_violation(M[M[x, y], z] == M[x, M[y, z]])
    if bad is not None:
        raise NotAGroupError(f"associativity fails at {bad}")
    return mul, identity, inverse


def make_conjugation_quandle(group_table) -> FiniteQuandle:
    """x*y = y^-1 x y in the group given by its multiplication table."""
    mul, _, inv = _check_group(group_table)
    n = len(mul)
    star = tuple(tuple(mul[mul[inv[y]][x]][y] for y in range(n)) for x in range(n))
    starbar = tuple(tuple(mul[mul[y][x]][inv[y]] for y in range(n)) for x in range(n))
    return FiniteQuandle(n, star, starbar)


def make_generalized_alexander(group_table, f: Sequence[int]) -> FiniteQuandle:
    """x*y = f(x y^-1) y for a group automorphism f (given as a permutation)."""
    mul, _, inv = _check_group(group_table)
    n = len(mul)
    f = [int(v) for v in f]
    if sorted(f) != list(range(n)):
        raise NotAutomorphismError("f is not a permutation of the group elements")
    for g, h in itertools.product(range(n), repeat=2):
        if f[mul[g][h]] != mul[f[g]][f[h]]:
            raise NotAutomorphismError(f"f(gh) != f(g)f(h) at g={g}, h={h}")
    finv = [0] * n
    for g, v in enumerate(f):
        finv[v] = g
    star = tuple(tuple(mul[f[mul[x][inv[y]]]][y] for y in range(n)) for x in range(n))
    # z*y = x  <=>  z = f^-1(x y^-1) y
    starbar = tuple(tuple(mul[finv[mul[x][inv[y]]]][y] for y in range(n)) for x in range(n))
    return FiniteQuandle(n, star, starbar)


def affine_condition_values(n: int, a: int, b: int, c: int, d: int = 0) -> tuple[int, int]:
    """The two residues that must vanish: (1-a)(1-b-c) and (1-a)d modulo n."""
    return ((1 - a) * (1 - b - c)) % n, ((1 - a) * d) % n


def affine_singquandle_tables(n: int, a: int, b: int, c: int, d: int = 0) -> FiniteSingquandle:
    """Build the affine tables without checking any condition (a must be a unit)."""
    params = AffineParams(n, a % n, b % n, c % n, d % n)
    ai = params.a_inv
    star = _tabulate(n, lambda x, y: a * x + (1 - a) * y)
    starbar = _tabulate(n, lambda x, y: ai * x + (1 - ai) * y)
    cx, cy, k = params.r2_coefficients()
    r1 = _tabulate(n, lambda x, y: d + b * x + c * y)
    r2 = _tabulate(n, lambda x, y: k + cx * x + cy * y)
    return FiniteSingquandle(FiniteQuandle(n, star, starbar), r1, r2, params)


def make_affine_singquandle(n: int, a: int, b: int, c: int, d: int = 0) -> FiniteSingquandle:
    """Affine singquandle on Z_n with R1 = d + bx + cy and R2(x,y) = R1(y, x*y).

    Accepted exactly when a is a unit, (1-a)(1-b-c) = 0 and (1-a)d = 0 in Z_n;
    for d = 0 the second condition is vacuous.
    """
    n = _check_size(n)
    _require_unit(a, n, "a")
    main, const = affine_condition_values(n, a, b, c, d)
    if main or const:
        raise AffineConditionError(
            f"affine condition fails over Z_{n}: (1-a)(1-b-c) = {main}, (1-a)d = {const}",
            main, const)
    return affine_singquandle_tables(n, a, b, c, d)


def enumerate_affine_singquandles(n: int) -> list[tuple[int, int, int, int]]:
    """All (a, b, c, d) whose affine tables pass verify_singquandle, lexicographically."""
    n = _check_size(n)
    found = []
    for a in range(n):
        if gcd(a, n) != 1:
            continue
        for b, c, d in itertools.product(range(n), repeat=3):
            if verify_singquandle(affine_singquandle_tables(n, a, b, c, d)).ok:
                found.append((a, b, c, d))
    return found


# -- JSON structure files ----------------------------------------------------


def singquandle_from_json(data: Mapping) -> FiniteSingquandle:
    """Full form {"n", "star", "r1", "r2"} or affine form {"n", "a", "b", "c", "d"}."""
    if not isinstance(data, Mapping) or "n" not in data:
        raise MalformedTableError("structure must be an object with an 'n' field")
    n = data["n"]
    if "star" in data:
        base = FiniteQuandle.from_star(data["star"])
        if base.n != n:
            raise MalformedTableError(f"star table has size {base.n}, but n = {n}")
        return FiniteSingquandle(base, data["r1"], data["r2"])
    if "a" in data:
        return make_affine_singquandle(n, data["a"], data.get("b", 0), data.get("c", 0), data.get("d", 0))
    raise MalformedTableError("structure needs either tables or affine parameters")


def singquandle_to_json(s: FiniteSingquandle) -> dict:
    out = {"n": s.n, "star": [list(r) for r in s.star],
           "r1": [list(r) for r in s.r1], "r2": [list(r) for r in s.r2]}
    if s.affine is not None:
        p = s.affine
        out["affine"] = {"a": p.a, "b": p.b, "c": p.c, "d": p.d}
    return out
