"""Boltzmann weights and the state-sum invariant.

The coefficient group Z_m = <u | u^m = 1> is written additively inside the
computation: each coloring contributes u^w where w is the sum of its
crossing weights in Z_m, and the invariant is stored as the vector of
multiplicities of u^0 .. u^(m-1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .algebra import FiniteSingquandle, VerificationReport
from .cocycle import CocyclePair, verify_cocycle_pair
from .coloring import Coloring, enumerate_colorings
from .diagram import Classical, Crossing, SingularDiagram


class CocycleVerificationError(ValueError):
    def __init__(self, report: VerificationReport):
        failed = ", ".join(report.failures())
        super().__init__(f"cocycle pair fails {failed}; the state sum would not be an invariant")
        self.report = report
        self.failed = report.failures()


@dataclass(frozen=True)
class InvariantValue:
    m: int
    coeffs: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.coeffs)

    def __str__(self) -> str:
        return format_invariant(self)

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": list(self.coeffs), "pretty": format_invariant(self)}

    @classmethod
    def from_json(cls, data: dict) -> "InvariantValue":
        return cls(int(data["m"]), tuple(int(c) for c in data["coeffs"]))


def format_invariant(v: InvariantValue) -> str:
    terms = []
    for i, a in enumerate(v.coeffs):
        if a == 0:
            continue
        if i == 0:
            terms.append(str(a))
        elif i == 1:
            terms.append(f"{a}u")
        else:
            terms.append(f"{a}u^{i}")
    return " + ".join(terms) if terms else "0"


_TERM = re.compile(r"^(\d+)(u(?:\^(\d+))?)?$")


def parse_invariant(text: str, m: int) -> InvariantValue:
    """Inverse of format_invariant for a known modulus."""
    coeffs = [0] * m
    body = text.strip()
    if body == "0":
        return InvariantValue(m, tuple(coeffs))
    for term in body.split("+"):
        match = _TERM.match(term.strip())
        if not match:
            raise ValueError(f"cannot parse term {term.strip()!r}")
        power = 0 if match.group(2) is None else int(match.group(3) or 1)
        if power >= m:
            raise ValueError(f"power {power} out of range for m={m}")
        coeffs[power] += int(match.group(1))
    return InvariantValue(m, tuple(coeffs))


def crossing_weight(crossing: Crossing, coloring: Sequence[int], p: CocyclePair) -> int:
    """+phi(x, y) at a positive crossing (x the incoming under color, y the over
    color), -phi(x, y) at a negative one (x the outgoing under color), and
    phiprime(x, y) at a singular crossing with incoming colors (x, y)."""
    if isinstance(crossing, Classical):
        y = coloring[crossing.over]
        if crossing.sign > 0:
            return p.phi[coloring[crossing.under_in]][y] % p.m
        return -p.phi[coloring[crossing.under_out]][y] % p.m
    return p.phiprime[coloring[crossing.in_left]][coloring[crossing.in_right]] % p.m


def coloring_weight(d: SingularDiagram, coloring: Sequence[int], p: CocyclePair) -> int:
    return sum(crossing_weight(c, coloring, p) for c in d.crossings) % p.m


def state_sum(d: SingularDiagram, s: FiniteSingquandle, p: CocyclePair, *,
              force: bool = False, colorings: Optional[Iterable[Coloring]] = None,
              workers: Optional[int] = None) -> InvariantValue:
    """Sum of u^(total weight) over all colorings of ``d`` by ``s``.

    Raises CocycleVerificationError unless ``p`` satisfies every cocycle
    condition for ``s``; ``force=True`` computes the sum regardless.
    """
    if not force:
        report = verify_cocycle_pair(s, p)
        if not report.ok:
            raise CocycleVerificationError(report)
    if colorings is None:
        colorings = enumerate_colorings(d, s, workers=workers)
    coeffs = [0] * p.m
    for col in colorings:
        coeffs[coloring_weight(d, col, p)] += 1
    return InvariantValue(p.m, tuple(coeffs))
