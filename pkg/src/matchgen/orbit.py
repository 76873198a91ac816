"""Orbit analysis of period matrices under the shuffle operator.

Some weight patterns return to themselves after finitely many shuffle
rounds, either up to a single scalar multiple or up to rescaling a formal
parameter.  Detecting that periodicity turns the reduction pipeline into a
multiplicative recurrence: the diamond value at order n is an explicit
constant times the value at order n - k.  This module finds the period,
extracts the constant, and normalizes period matrices under the row and
column scalings that leave the recurrence structure unchanged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .aztec import (AztecInstance, PeriodMatrix, ZeroCellFactor,
                    _reduce_step_factored, block_factor, shuffle)
from .exprs import parse
from .rational import FactoredRF, FactoredValue, RationalFunction

RF = RationalFunction

DEFAULT_MAX_ITER = 40


@dataclass
class OrbitReport:
    """Outcome of an orbit search.

    kind is "proportional" when shuffle^k returns a scalar multiple of the
    start matrix, "q_shift" when it returns the start matrix with its
    parameter multiplied by sigma, and "none" when no period was found
    within the iteration budget.

    Per-step factors are kept in factored form because their expanded
    degree grows quickly along an orbit; call .expand() on an entry for a
    plain rational function.
    """

    kind: str
    period_length: int = 0
    scalar: Optional[RF] = None
    sigma: Optional[Fraction] = None
    per_step_factors: List[FactoredValue] = field(default_factory=list)

    def to_json(self) -> str:
        data = {"kind": self.kind, "k": self.period_length}
        if self.scalar is not None:
            data["scalar"] = str(self.scalar)
        if self.sigma is not None:
            data["sigma"] = str(self.sigma)
        data["per_step_factors"] = [str(f.expand())
                                    for f in self.per_step_factors]
        return json.dumps(data)


def _as_plain(e) -> RF:
    if isinstance(e, FactoredRF):
        return e.to_rf()
    return e


def period_step_factor(p: PeriodMatrix) -> FactoredValue:
    """Product of the block factors of one period, one per 2x2 block.

    Returned in factored form; expanding late iterates of an orbit can be
    far more expensive than computing them.
    """
    out = FactoredValue()
    for bi in range(0, p.k, 2):
        for bj in range(0, p.l, 2):
            delta = block_factor(p.entries[bi][bj], p.entries[bi][bj + 1],
                                 p.entries[bi + 1][bj],
                                 p.entries[bi + 1][bj + 1])
            if delta.is_zero():
                raise ZeroCellFactor(-1, bi // 2, bj // 2)
            out.mul_rf(delta)
    return out


def proportionality_scalar(a: PeriodMatrix, b: PeriodMatrix) -> Optional[RF]:
    """The scalar c with b = c * a entrywise, or None.

    Zero entries must sit at the same positions; c is read off the first
    nonzero pair and then checked against every entry.
    """
    if (a.k, a.l) != (b.k, b.l):
        return None
    c = None
    for i in range(a.k):
        for j in range(a.l):
            ea = FactoredRF._coerce(a.entries[i][j])
            eb = FactoredRF._coerce(b.entries[i][j])
            if ea.is_zero() != eb.is_zero():
                return None
            if ea.is_zero():
                continue
            if c is None:
                c = eb / ea
            elif eb != c * ea:
                return None
    return None if c is None else c.to_rf()


def detect_proportional(a: PeriodMatrix,
                        max_iter: int = DEFAULT_MAX_ITER) -> OrbitReport:
    """Smallest k with shuffle^k(a) = c * a, searched up to max_iter."""
    cur = a.map(FactoredRF._coerce)
    factors: List[FactoredValue] = []
    for k in range(1, max_iter + 1):
        factors.append(period_step_factor(cur))
        cur = shuffle(cur)
        c = proportionality_scalar(a, cur)
        if c is not None:
            return OrbitReport("proportional", k, scalar=c,
                               per_step_factors=factors)
    return OrbitReport("none", per_step_factors=factors)


def _square_candidates(factors: List[FactoredValue]) -> List[Fraction]:
    """Integer squares up to 100 plus squares of constant step factors."""
    cands = [Fraction(i * i) for i in range(1, 11)]
    for f in factors:
        if not f.factors:
            v = f.coeff
            if v > 0:
                for s in (v * v, 1 / (v * v)):
                    if s not in cands:
                        cands.append(s)
    # sigma = 1 first, so a parameter-free matrix reports the identity shift
    return sorted(set(cands), key=lambda s: (s != 1, s))


def detect_q_shift(aq: PeriodMatrix, var: str = "q",
                   max_iter: int = DEFAULT_MAX_ITER,
                   candidates: Optional[List[Fraction]] = None) -> OrbitReport:
    """Smallest k with shuffle^k(A(q)) = A(sigma * q) for a candidate sigma.

    Candidate multipliers default to the integer squares up to 100 together
    with squares of any constant per-step factors encountered along the
    orbit.  A matrix without the parameter is handled by the same loop,
    since substitution is then the identity (sigma = 1).
    """
    cur = aq.map(FactoredRF._coerce)
    factors: List[FactoredValue] = []
    targets = {}

    def target(sigma: Fraction) -> PeriodMatrix:
        if sigma not in targets:
            shift = RF.const(sigma) * parse(var)
            targets[sigma] = aq.map(
                lambda e: _as_plain(e).substitute({var: shift}))
        return targets[sigma]

    for k in range(1, max_iter + 1):
        factors.append(period_step_factor(cur))
        cur = shuffle(cur)
        cands = candidates if candidates is not None \
            else _square_candidates(factors)
        for sigma in cands:
            t = target(sigma)
            if all(_as_plain(cur.entries[i][j]) == t.entries[i][j]
                   for i in range(aq.k) for j in range(aq.l)):
                return OrbitReport("q_shift", k, sigma=sigma,
                                   per_step_factors=factors)
    return OrbitReport("none", per_step_factors=factors)


def recurrence_constant(a: PeriodMatrix, n: int, k: int,
                        factored: bool = False):
    """The constant K with M(order n; a) = K * M(order n - k; a).

    Runs k reduction rounds from order n, multiplies their step factors,
    and absorbs the proportionality scalar c of shuffle^k(a) = c * a: the
    order n - k diamond has (n - k)(n - k + 1) matched edges, so scaling
    every weight by c scales its value by c to that power.

    With factored=True the constant comes back as a FactoredRF; its
    expanded form can be enormous (high powers of the block factors) even
    when every factor is small.
    """
    if k < 1 or n < k:
        raise ValueError("need n >= k >= 1")
    inst = AztecInstance(n, a.map(FactoredRF._coerce))
    total = FactoredValue()
    for _ in range(k):
        factor, inst = _reduce_step_factored(inst)
        total.mul(factor)
    c = proportionality_scalar(a, inst.period)
    if c is None:
        raise ValueError(f"shuffle^{k} of the matrix is not a scalar "
                         "multiple of it")
    m = n - k
    total.mul_rf(c, m * (m + 1))
    if factored:
        return FactoredRF(total.coeff, total.factors)
    return total.expand()


def line_edge_count(line: int, n: int) -> int:
    """Edges every perfect matching uses in one array row or column.

    Lines are 1-indexed across the 2n x 2n array; the count is the same
    for rows and columns: n - i + 1 on line 2i - 1 and i on line 2i.
    """
    i = (line + 1) // 2
    return n - i + 1 if line % 2 else i


def class_exponent(period_index: int, period_size: int, n: int) -> int:
    """Total matched edges over all array lines hitting one period line."""
    return sum(line_edge_count(r, n) for r in range(1, 2 * n + 1)
               if (r - 1) % period_size == period_index)


def equivalence_reduce(a: PeriodMatrix) -> Tuple[PeriodMatrix, list]:
    """Normalize under single row and column scalings.

    Scales each period row so its first nonzero entry is 1, then each
    column, rows before columns.  Returns the normal form and a ledger of
    ("row"|"col", index, factor) entries recording the multiplier applied
    to that line; ledger_multiplier reconstructs the induced change of the
    diamond value at any order.  Uniqueness of the normal form is only
    observed, not proven, for matrices with zero entries.
    """
    rows = [[_as_plain(e) for e in row] for row in a.entries]
    ledger = []
    for i in range(a.k):
        pivot = next((e for e in rows[i] if not e.is_zero()), None)
        if pivot is not None and pivot != RF.const(1):
            s = pivot.inverse()
            rows[i] = [e * s for e in rows[i]]
            ledger.append(("row", i, s))
    for j in range(a.l):
        pivot = next((rows[i][j] for i in range(a.k)
                      if not rows[i][j].is_zero()), None)
        if pivot is not None and pivot != RF.const(1):
            s = pivot.inverse()
            for i in range(a.k):
                rows[i][j] = rows[i][j] * s
            ledger.append(("col", j, s))
    return PeriodMatrix(rows), ledger


def ledger_multiplier(ledger, k: int, l: int, n: int) -> RF:
    """Value multiplier induced by a scaling ledger at order n.

    If reduce(a) = (b, ledger) then
    M(order n; b) = ledger_multiplier(ledger, a.k, a.l, n) * M(order n; a).
    """
    out = RF.const(1)
    for kind, index, s in ledger:
        size = k if kind == "row" else l
        out = out * s ** class_exponent(index, size, n)
    return out
