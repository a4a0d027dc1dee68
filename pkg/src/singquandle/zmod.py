"""Exact linear algebra over Z_m.

The modulus is split into prime powers.  Over each local ring Z/p^e a
matrix is diagonalised by pivoting on an entry of minimal p-adic valuation
(such an entry divides every other entry, so one pass clears its row and
column), tracking the column transform.  Kernels and affine solution sets
are read off the diagonal and glued back together with the CRT.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np
from sympy import factorint


@dataclass(frozen=True)
class LocalForm:
    q: int               # p**e
    p: int
    e: int
    pivots: tuple[int, ...]   # valuations v_i of the diagonal entries p**v_i
    V: np.ndarray        # column transform, x = V @ y
    rhs: Optional[np.ndarray]  # transformed right-hand side (row ops applied)


def _valuation_mask(sub: np.ndarray, p: int, e: int):
    """Return (v, (i, j)) for the first entry of minimal valuation, or None."""
    units = sub % p != 0
    k = int(units.argmax())
    if units.flat[k]:
        return 0, divmod(k, sub.shape[1])
    if e == 1:
        return None
    pk = p
    for v in range(1, e):
        pk_next = pk * p
        hits = np.argwhere(sub % pk_next != 0)
        if len(hits):
            i, j = hits[0]
            return v, (int(i), int(j))
        pk = pk_next
    return None


def local_diagonalize(A: np.ndarray, p: int, e: int, b: Optional[np.ndarray] = None) -> LocalForm:
    q = p ** e
    A = np.array(A, dtype=np.int64) % q
    if b is None:
        # row order and multiplicity do not affect a homogeneous solution set
        A = np.unique(A[A.any(axis=1)], axis=0)
    rows, cols = A.shape
    V = np.eye(cols, dtype=np.int64)
    rhs = None if b is None else np.array(b, dtype=np.int64).reshape(-1) % q
    pivots = []
    r = 0
    while r < min(rows, cols):
        found = _valuation_mask(A[r:, r:], p, e)
        if found is None:
            break
        v, (i, j) = found
        i += r
        j += r
        if i != r:
            A[[r, i]] = A[[i, r]]
            if rhs is not None:
                rhs[[r, i]] = rhs[[i, r]]
        if j != r:
            A[:, [r, j]] = A[:, [j, r]]
            V[:, [r, j]] = V[:, [j, r]]
        pv = p ** v
        unit = int(A[r, r]) // pv
        uinv = pow(unit, -1, q)
        A[r] = (A[r] * uinv) % q
        if rhs is not None:
            rhs[r] = (rhs[r] * uinv) % q
        # every entry below and to the right is divisible by p**v
        f = A[r + 1:, r] // pv
        if f.any():
            A[r + 1:] = (A[r + 1:] - np.outer(f, A[r])) % q
            if rhs is not None:
                rhs[r + 1:] = (rhs[r + 1:] - f * rhs[r]) % q
            else:
                keep = A[r + 1:].any(axis=1)
                A = np.concatenate([A[:r + 1], A[r + 1:][keep]])
                rows = A.shape[0]
        g = A[r, r + 1:] // pv
        if g.any():
            V[:, r + 1:] = (V[:, r + 1:] - np.outer(V[:, r], g)) % q
            A[r, r + 1:] = 0
        pivots.append(v)
        r += 1
    return LocalForm(q, p, e, tuple(pivots), V % q, rhs)


def _crt_idempotents(moduli: Sequence[int]) -> list[int]:
    m = 1
    for q in moduli:
        m *= q
    out = []
    for q in moduli:
        rest = m // q
        out.append((rest * pow(rest, -1, q)) % m if q > 1 else 0)
    return out


@dataclass(frozen=True)
class ModularSolution:
    """Solution set {particular + sum c_i g_i : 0 <= c_i < order_i} of A x = b over Z_m.

    The generators span the kernel as a direct sum of cyclic groups, so
    distinct coefficient vectors give distinct solutions.  When the system
    is inconsistent ``particular`` is None and ``count`` is 0.
    """

    m: int
    n_unknowns: int
    particular: Optional[tuple[int, ...]]
    generators: tuple[tuple[int, ...], ...]
    orders: tuple[int, ...]

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def count(self) -> int:
        if self.particular is None:
            return 0
        total = 1
        for o in self.orders:
            total *= o
        return total

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return self.iter_solutions()

    def iter_solutions(self, limit: Optional[int] = None) -> Iterator[tuple[int, ...]]:
        if self.particular is None:
            return
        if limit is not None and self.count > limit:
            raise OverflowError(f"{self.count} solutions exceed the iteration bound {limit}")
        m = self.m
        base = np.array(self.particular, dtype=np.int64)
        G = np.array(self.generators, dtype=np.int64).reshape(len(self.generators), self.n_unknowns)
        for coeffs in itertools.product(*(range(o) for o in self.orders)):
            if coeffs:
                vec = (base + np.array(coeffs, dtype=np.int64) @ G) % m
            else:
                vec = base % m
            yield tuple(int(v) for v in vec)


def solve_mod(A, b, m: int) -> ModularSolution:
    """Describe all x in Z_m^k with A x = b (mod m)."""
    A = np.array(A, dtype=np.int64)
    rows, k = A.shape
    b = np.zeros(rows, dtype=np.int64) if b is None else np.array(b, dtype=np.int64).reshape(rows)
    if m == 1:
        return ModularSolution(1, k, (0,) * k, (), ())
    factors = sorted(factorint(m).items())
    moduli = [p ** e for p, e in factors]
    idem = _crt_idempotents(moduli)

    particular = np.zeros(k, dtype=object)
    generators: list[tuple[int, ...]] = []
    orders: list[int] = []
    for (p, e), q, E in zip(factors, moduli, idem):
        homogeneous = not np.any(b % q)
        if rows == 0:
            form = LocalForm(q, p, e, (), np.eye(k, dtype=np.int64), None)
        else:
            form = local_diagonalize(A, p, e, None if homogeneous else b)
        rank = len(form.pivots)
        rhs = form.rhs
        if rhs is not None and np.any(rhs[rank:] % q):
            return ModularSolution(m, k, None, (), ())
        y = np.zeros(k, dtype=np.int64)
        for i, v in enumerate(form.pivots):
            c = int(rhs[i]) if rhs is not None else 0
            if c % (p ** v):
                return ModularSolution(m, k, None, (), ())
            y[i] = c // (p ** v)
        x_local = (form.V @ y) % q
        particular = particular + x_local.astype(object) * E
        for i, v in enumerate(form.pivots):
            if v > 0:
                gen = (form.V[:, i] * (p ** (e - v))) % q
                generators.append(tuple(int(g) * E % m for g in gen))
                orders.append(p ** v)
        for j in range(rank, k):
            generators.append(tuple(int(g) * E % m for g in form.V[:, j]))
            orders.append(q)
    part = tuple(int(v) % m for v in particular)
    return ModularSolution(m, k, part, tuple(generators), tuple(orders))


def kernel_mod(A, m: int, n_unknowns: Optional[int] = None) -> ModularSolution:
    A = np.array(A, dtype=np.int64)
    if A.size == 0:
        k = n_unknowns if n_unknowns is not None else (A.shape[1] if A.ndim == 2 else 0)
        A = np.zeros((0, k), dtype=np.int64)
    return solve_mod(A, np.zeros(A.shape[0], dtype=np.int64), m)
