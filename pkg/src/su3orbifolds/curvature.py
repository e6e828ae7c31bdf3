"""Exact positive-curvature decision for the 6-dimensional torus quotients.

The metric obtained by shrinking along the U(2) block that fixes the
third coordinate is positively curved iff two exact rational systems in
(t, eta) are both infeasible.  A feasible point is returned as a flat
witness.  When the quotient is positively curved, a bounded search finds
a circle inside the torus whose 7-dimensional quotient is itself
positively curved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .lattice import Equality, RationalWitness, feasibility, snf2
from .eschenburg7 import CircleAction7, Validity, Weight3, positive7
from .eschenburg6 import (
    GL2Z,
    EquivalenceMove,
    Scale,
    Shift,
    TorusAction6,
    apply_equivalence,
    validate6,
)
from .lattice import _ext_gcd


@dataclass(frozen=True)
class FlatWitness:
    """Exact parameters of a flat plane for the block-shrunk metric.

    kind "Condition1" solves (1-t)b1 + t*b2 = sum(eta*a) together with
    (1-t)q1 + t*q2 = sum(eta*p); kind "Condition2" solves b3 = sum(eta*a)
    and q3 = sum(eta*p) (no t involved).
    """

    kind: str
    t: Optional[Fraction]
    eta: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        if self.kind not in ("Condition1", "Condition2"):
            raise ValueError("kind must be Condition1 or Condition2")
        if (self.kind == "Condition1") != (self.t is not None):
            raise ValueError("t is present exactly for Condition1")


def _system1(act: TorusAction6) -> list[Equality]:
    a, b, p, q = act.a, act.b, act.p, act.q
    return [
        (Fraction(b[0]), Fraction(b[1] - b[0]),
         Fraction(-a[0]), Fraction(-a[1]), Fraction(-a[2])),
        (Fraction(q[0]), Fraction(q[1] - q[0]),
         Fraction(-p[0]), Fraction(-p[1]), Fraction(-p[2])),
    ]


def _system2(act: TorusAction6) -> list[Equality]:
    a, b, p, q = act.a, act.b, act.p, act.q
    return [
        (Fraction(b[2]), Fraction(0),
         Fraction(-a[0]), Fraction(-a[1]), Fraction(-a[2])),
        (Fraction(q[2]), Fraction(0),
         Fraction(-p[0]), Fraction(-p[1]), Fraction(-p[2])),
    ]


def flat_witness(act: TorusAction6) -> Optional[FlatWitness]:
    """Exact flat-plane witness, or None when positively curved.

    The decision is exact rational feasibility; None means both defining
    systems are infeasible, which is equivalent to positive curvature of
    the block-shrunk metric.
    """
    if validate6(act) is not Validity.ORBIFOLD:
        raise ValueError("not an orbifold action")
    w = feasibility(_system1(act))
    if w is not None:
        return FlatWitness(kind="Condition1", t=w.t, eta=w.eta)
    w = feasibility(_system2(act))
    if w is not None:
        return FlatWitness(kind="Condition2", t=None, eta=w.eta)
    return None


@dataclass(frozen=True)
class CircleCombo:
    """Coprime integer combination of the two generating circles."""

    lam: int
    mu: int

    def __post_init__(self):
        if gcd(self.lam, self.mu) != 1:
            raise ValueError("lam and mu must be coprime")

    def circle(self, act: TorusAction6) -> CircleAction7:
        p = tuple(self.lam * x + self.mu * y for x, y in zip(act.p, act.a))
        q = tuple(self.lam * x + self.mu * y for x, y in zip(act.q, act.b))
        return CircleAction7(p=p, q=q)


class ExhaustedBound(RuntimeError):
    """The search bound was exhausted without finding a circle."""

    def __init__(self, bound: int):
        super().__init__(f"no positively curved circle with coefficients up to {bound}")
        self.bound = bound


def _candidates(bound: int):
    # canonical representatives: mu > 0, or (lam, mu) = (1, 0); ordered by
    # max(|lam|, |mu|), then |lam|, with positive lam first on ties
    for m in range(1, bound + 1):
        level = []
        for lam in range(-m, m + 1):
            for mu in range(0, m + 1):
                if max(abs(lam), mu) != m:
                    continue
                if mu == 0 and lam != 1:
                    continue
                if gcd(lam, mu) != 1:
                    continue
                level.append((lam, mu))
        level.sort(key=lambda c: (abs(c[0]), c[0] < 0, c[1]))
        yield from level


def find_circle(act: TorusAction6, bound: int = 100) -> Optional[CircleCombo]:
    """A coprime circle combination with positively curved 7-D quotient.

    Returns None (provably none exists) when the 6-D quotient itself is
    not positively curved: any positively curved circle inside the torus
    would force positivity of the quotient by Riemannian submersion.
    Otherwise searches coprime (lam, mu) in a deterministic order and
    raises ExhaustedBound if none works within the bound.
    """
    if flat_witness(act) is not None:
        return None
    for lam, mu in _candidates(bound):
        combo = CircleCombo(lam, mu)
        if positive7(combo.circle(act)):
            return combo
    raise ExhaustedBound(bound)


# ---------------------------------------------------------------------------
# Reparametrization normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReparCase:
    """Normal form of the generating circles after reparametrization.

    case "AllZeroP": the first circle has left weights p' = (0,0,0).
    case "BlockForm": p' = (0,n,0) and a' = (0,n,n) with n > 0.
    Both are reached by quotient-preserving moves (possibly including
    integer circle scalings, which may leave the action ineffective).
    """

    case: str
    n: Optional[int]
    transformed: TorusAction6
    moves: tuple[EquivalenceMove, ...]


def _snf2x2_full(m):
    """U, D, V with m = U @ D @ V, U and V unimodular, D diagonal."""
    a = [list(r) for r in m]
    rops = [[1, 0], [0, 1]]  # accumulated row ops: a = rops_total @ m_orig ...
    cops = [[1, 0], [0, 1]]

    def colop(al, be, ga, de):
        for mat in (a, cops):
            for row in mat:
                r0, r1 = row
                row[0] = al * r0 + be * r1
                row[1] = ga * r0 + de * r1

    def rowop(t00, t01, t10, t11):
        for mat in (a, rops):
            r0 = [t00 * mat[0][0] + t01 * mat[1][0], t00 * mat[0][1] + t01 * mat[1][1]]
            r1 = [t10 * mat[0][0] + t11 * mat[1][0], t10 * mat[0][1] + t11 * mat[1][1]]
            mat[0], mat[1] = r0, r1

    for _ in range(200):
        if a[0][1] != 0:
            if a[0][0] == 0:
                colop(0, 1, 1, 0)
            elif a[0][1] % a[0][0] == 0:
                colop(1, 0, -(a[0][1] // a[0][0]), 1)
            else:
                g, x, y = _ext_gcd(a[0][0], a[0][1])
                colop(x, y, -(a[0][1] // g), a[0][0] // g)
        if a[1][0] != 0:
            if a[0][0] == 0:
                rowop(0, 1, 1, 0)
            elif a[1][0] % a[0][0] == 0:
                f = a[1][0] // a[0][0]
                rowop(1, 0, -f, 1)
            else:
                g, x, y = _ext_gcd(a[0][0], a[1][0])
                p, q = a[1][0] // g, a[0][0] // g
                rowop(x, y, -p, q)
        if a[0][1] == 0 and a[1][0] == 0:
            # m = U D V with U = rops^{-1}, V = cops^{-1}
            det_r = rops[0][0] * rops[1][1] - rops[0][1] * rops[1][0]
            det_c = cops[0][0] * cops[1][1] - cops[0][1] * cops[1][0]
            u = [[det_r * rops[1][1], -det_r * rops[0][1]],
                 [-det_r * rops[1][0], det_r * rops[0][0]]]
            v = [[det_c * cops[1][1], -det_c * cops[0][1]],
                 [-det_c * cops[1][0], det_c * cops[0][0]]]
            return u, a, v
    raise RuntimeError("matrix reduction did not terminate")  # pragma: no cover


def _apply_integer_matrix(
    act: TorusAction6, m
) -> tuple[TorusAction6, list[EquivalenceMove]]:
    """Replace the circles by the integer combinations given by m
    (nonzero determinant), decomposed into unimodular moves and integer
    circle scalings.  The subgroup generated is unchanged."""
    u, d, v = _snf2x2_full(m)
    moves: list[EquivalenceMove] = [
        GL2Z((tuple(v[0]), tuple(v[1]))),
        Scale(Fraction(d[0][0]), Fraction(d[1][1])),
        GL2Z((tuple(u[0]), tuple(u[1]))),
    ]
    for mv in moves:
        act = apply_equivalence(act, mv)
    return act, moves


def repar_normal_form(act: TorusAction6) -> ReparCase:
    """Bring the generating circles to one of two normal forms.

    After gauging p_1 = a_1 = 0, the branch is decided by
    delta = a_2*p_3 - a_3*p_2: zero yields a combination killing p
    entirely (case AllZeroP), nonzero yields the block form
    p' = (0,n,0), a' = (0,n,n) with n = |delta|.
    """
    if validate6(act) is not Validity.ORBIFOLD:
        raise ValueError("not an orbifold action")
    moves: list[EquivalenceMove] = []
    cur = act
    mv = Shift(c=-cur.a[0], d=-cur.p[0])
    cur = apply_equivalence(cur, mv)
    moves.append(mv)
    p, a = cur.p, cur.a
    delta = a[1] * p[2] - a[2] * p[1]
    if delta == 0:
        # p and a are proportional in the last two slots; kill p
        if p == (0, 0, 0):
            mn = (1, 0)
        elif a[1] == 0 and a[2] == 0:
            mn = (0, 1)
        else:
            i = 1 if (a[1], p[1]) != (0, 0) else 2
            g = gcd(a[i], p[i])
            mn = (a[i] // g, -p[i] // g)
        g, x, y = _ext_gcd(mn[0], mn[1])
        assert g == 1
        mv = GL2Z(((mn[0], mn[1]), (-y, x)))
        cur = apply_equivalence(cur, mv)
        moves.append(mv)
        if cur.p != (0, 0, 0):
            raise RuntimeError("normal form failed: p not eliminated")
        return ReparCase(case="AllZeroP", n=None, transformed=cur, moves=tuple(moves))
    s = 1 if delta > 0 else -1
    n = abs(delta)
    # rows: new p = (0, n, 0); new a = new p - (combination giving (0,0,-n))
    m = (
        (-s * a[2], s * p[2]),
        (-s * (a[2] - a[1]), s * (p[2] - p[1])),
    )
    cur, more = _apply_integer_matrix(cur, m)
    moves.extend(more)
    if cur.p != (0, n, 0) or cur.a != (0, n, n):
        raise RuntimeError("normal form failed: block shape not reached")
    return ReparCase(case="BlockForm", n=n, transformed=cur, moves=tuple(moves))
