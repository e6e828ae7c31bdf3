"""Exact integer and rational kernels.

Everything in this module is exact: arbitrary-precision integers for the
Smith-normal-form / torus-kernel computations, and `fractions.Fraction`
for the feasibility solver.  No floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence


Row = tuple[int, int]


@dataclass(frozen=True)
class AbelianGroup2:
    """Finite abelian group on at most two generators, Z_d1 + Z_d2 with d1 | d2.

    d1 = d2 = 1 encodes the trivial group.  d2 = 0 encodes an infinite
    (circle) factor, which callers treat as a degenerate action.
    """

    d1: int
    d2: int

    def __post_init__(self):
        if self.d1 < 0 or self.d2 < 0:
            raise ValueError("invariant factors must be non-negative")
        if self.d1 and self.d2 and self.d2 % self.d1 != 0:
            raise ValueError(f"d1={self.d1} must divide d2={self.d2}")

    @property
    def order(self) -> int:
        """Group order; 0 means infinite."""
        return self.d1 * self.d2

    @property
    def is_trivial(self) -> bool:
        return self.d1 == 1 and self.d2 == 1

    @property
    def is_finite(self) -> bool:
        return self.d2 != 0

    @property
    def is_cyclic(self) -> bool:
        return self.d1 == 1

    def __str__(self) -> str:
        if not self.is_finite:
            return "infinite"
        if self.is_trivial:
            return "trivial"
        if self.is_cyclic:
            return f"Z_{self.d2}"
        return f"Z_{self.d1}+Z_{self.d2}"


TRIVIAL_GROUP = AbelianGroup2(1, 1)


def snf2(rows: Sequence[Row]) -> tuple[int, int]:
    """Invariant factors (d1, d2) of an integer matrix with two columns.

    d1 is the gcd of all entries; d1*d2 is the gcd of all 2x2 minors
    (d2 = 0 when every minor vanishes, i.e. rank <= 1).
    """
    rows = [(int(a), int(b)) for a, b in rows]
    if not rows:
        raise ValueError("matrix must have at least one row")
    d1 = 0
    for a, b in rows:
        d1 = gcd(d1, gcd(a, b))
    minors = 0
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            m = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0]
            minors = gcd(minors, m)
    if minors == 0:
        return d1, 0
    return d1, minors // d1


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def row_lattice_basis(rows: Sequence[Row]) -> tuple[int, int, int]:
    """Hermite basis [[a, b], [0, c]] (a, c >= 0) of the lattice spanned by rows."""
    a = b = c = 0
    for x, y in rows:
        x, y = int(x), int(y)
        if a != 0:
            if x != 0:
                g, u, v = _ext_gcd(a, x)
                leftover = (a * y - x * b) // g
                a, b = g, u * b + v * y
                c = gcd(c, leftover)
            # x == 0: row only constrains the second coordinate
            else:
                c = gcd(c, y)
        elif x != 0:
            a, b = x, y
        else:
            c = gcd(c, y)
    if a < 0:
        a, b = -a, -b
    return a, b, abs(c)


def _snf2x2(b: Sequence[Sequence[int]]) -> tuple[int, int, list[list[int]]]:
    """SNF of a 2x2 integer matrix B.

    Returns (d1, d2, T) with T unimodular such that the solutions of
    B x in Z^2 are exactly { T (k/d1, l/d2) : k, l in Z } (for d1, d2 > 0).
    """
    a = [[int(b[0][0]), int(b[0][1])], [int(b[1][0]), int(b[1][1])]]
    t = [[1, 0], [0, 1]]

    def colop(al, be, ga, de):
        # (col0, col1) <- (al*col0 + be*col1, ga*col0 + de*col1)
        for m in (a, t):
            for row in m:
                r0, r1 = row
                row[0] = al * r0 + be * r1
                row[1] = ga * r0 + de * r1

    for _ in range(200):
        if a[0][1] != 0:
            if a[0][0] == 0:
                colop(0, 1, 1, 0)
            elif a[0][1] % a[0][0] == 0:
                # shear keeps the pivot and cannot regrow cleared entries
                colop(1, 0, -(a[0][1] // a[0][0]), 1)
            else:
                g, x, y = _ext_gcd(a[0][0], a[0][1])
                colop(x, y, -(a[0][1] // g), a[0][0] // g)
        if a[1][0] != 0:
            if a[0][0] == 0:
                a[0], a[1] = a[1], a[0]
            elif a[1][0] % a[0][0] == 0:
                f = a[1][0] // a[0][0]
                a[1] = [a[1][0] - f * a[0][0], a[1][1] - f * a[0][1]]
            else:
                g, x, y = _ext_gcd(a[0][0], a[1][0])
                r0 = [x * a[0][0] + y * a[1][0], x * a[0][1] + y * a[1][1]]
                p, q = a[1][0] // g, a[0][0] // g
                r1 = [-p * a[0][0] + q * a[1][0], -p * a[0][1] + q * a[1][1]]
                a = [r0, r1]
        if a[0][1] == 0 and a[1][0] == 0:
            d1, d2 = abs(a[0][0]), abs(a[1][1])
            if d1 and d2 and d2 % d1 != 0:
                # couple the diagonal entries (row op) and reduce again
                a[0] = [a[0][0] + a[1][0], a[0][1] + a[1][1]]
                continue
            if d1 == 0 and d2 != 0:
                d1, d2 = d2, d1
            return d1, d2, t
    raise RuntimeError("SNF reduction did not terminate")  # pragma: no cover


def _solution_lattice(rows: Sequence[Row]) -> tuple[int, int, list[list[int]]]:
    """Describe {x in R^2 : M x in Z^r for all rows} modulo Z^2.

    Returns (d1, d2, T) with the solutions being { T (k/d1, l/d2) } for a
    unimodular 2x2 matrix T.  Raises if the solution set is not finite
    modulo Z^2 (rank-deficient relation matrix).
    """
    a, b, c = row_lattice_basis(rows)
    if a == 0 or c == 0:
        raise ValueError("kernel is infinite")
    d1, d2, t = _snf2x2([[a, b], [0, c]])
    return d1, d2, t


def kernel_group(rows: Sequence[Row]) -> AbelianGroup2:
    """Structure of {(z, w) in T^2 : z^{m1} w^{m2} = 1 for every row (m1, m2)}.

    Returns Z_d1 + Z_d2 via the invariant factors of the relation matrix;
    d2 = 0 signals an infinite kernel.
    """
    d1, d2 = snf2(rows)
    if d1 == 0:
        # no constraints at all: two infinite factors, encode as (0, 0)
        return AbelianGroup2(0, 0)
    if d2 == 0:
        return AbelianGroup2(d1, 0)
    return AbelianGroup2(d1, d2)


def kernel_elements(rows: Sequence[Row]) -> list[tuple[Fraction, Fraction]]:
    """All elements of a finite kernel as exact pairs (x, y) in [0,1)^2.

    The pair (x, y) stands for (e^{2 pi i x}, e^{2 pi i y}).  Raises if the
    kernel is infinite.
    """
    d1, d2, t = _solution_lattice(rows)
    out = []
    for k in range(d1):
        for l in range(d2):
            x = Fraction(t[0][0] * k, d1) + Fraction(t[0][1] * l, d2)
            y = Fraction(t[1][0] * k, d1) + Fraction(t[1][1] * l, d2)
            out.append((x % 1, y % 1))
    return out


def kernel_generator(rows: Sequence[Row]) -> Optional[tuple[int, int, int]]:
    """A maximal-order generator (k, l, n) of a finite kernel, gcd(k, l) = 1.

    The element is (e^{2 pi i k/n}, e^{2 pi i l/n}) of exact order n = d2.
    Returns None for a trivial kernel; raises for an infinite one.
    """
    d1, d2, t = _solution_lattice(rows)
    if d2 == 1:
        return None
    # second SNF coordinate has the maximal order d2; its image under the
    # unimodular T is a primitive vector, so gcd(k, l) = 1 automatically
    return t[0][1], t[1][1], d2


@dataclass(frozen=True)
class RationalWitness:
    """Exact point (t, eta) in [0,1] x (standard 2-simplex)."""

    t: Fraction
    eta: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        if not (0 <= self.t <= 1):
            raise ValueError("t out of [0, 1]")
        if any(e < 0 for e in self.eta) or sum(self.eta) != 1:
            raise ValueError("eta not in the standard simplex")


# An equality  c0 + ct*t + c1*eta1 + c2*eta2 + c3*eta3 = 0
Equality = tuple[Fraction, Fraction, Fraction, Fraction, Fraction]


def feasibility(eqs: Iterable[Equality]) -> Optional[RationalWitness]:
    """Exact feasibility of affine equalities over [0,1] x simplex.

    Returns a witness satisfying every equality exactly, or None if the
    system is infeasible.  Decided by an exact phase-1 simplex (Bland's
    rule) over the non-negative variables (t, s, eta1, eta2, eta3) with
    t + s = 1 and eta1 + eta2 + eta3 = 1; fully deterministic.
    """
    # columns: t, s, e1, e2, e3
    rows: list[list[Fraction]] = [
        [Fraction(1), Fraction(1), Fraction(0), Fraction(0), Fraction(0)],
        [Fraction(0), Fraction(0), Fraction(1), Fraction(1), Fraction(1)],
    ]
    rhs: list[Fraction] = [Fraction(1), Fraction(1)]
    for c0, ct, c1, c2, c3 in eqs:
        row = [Fraction(ct), Fraction(0), Fraction(c1), Fraction(c2), Fraction(c3)]
        b = -Fraction(c0)
        if all(v == 0 for v in row):
            if b != 0:
                return None
            continue
        rows.append(row)
        rhs.append(b)

    sol = _phase1_simplex(rows, rhs)
    if sol is None:
        return None
    t, _s, e1, e2, e3 = sol
    return RationalWitness(t=t, eta=(e1, e2, e3))


def _phase1_simplex(a: list[list[Fraction]], b: list[Fraction]) -> Optional[list[Fraction]]:
    """Solve A x = b, x >= 0 exactly; return x or None.  Bland's rule."""
    m = len(a)
    n = len(a[0]) if m else 0
    # normalize b >= 0
    tab = []
    for i in range(m):
        row = list(a[i])
        bi = b[i]
        if bi < 0:
            row = [-v for v in row]
            bi = -bi
        tab.append(row + [Fraction(0)] * m + [bi])
    # artificial identity
    for i in range(m):
        tab[i][n + i] = Fraction(1)
    basis = [n + i for i in range(m)]
    total = n + m
    # objective: minimize sum of artificials -> reduced cost row
    cost = [Fraction(0)] * (total + 1)
    for i in range(m):
        for j in range(total + 1):
            cost[j] += tab[i][j]
    # cost of artificial basics is 1; reduced costs = sum of rows over
    # non-artificial part minus ... (standard phase-1 tableau)
    for i in range(m):
        cost[n + i] = Fraction(0)

    while True:
        # entering: first structural column with positive reduced cost (Bland);
        # artificial columns never re-enter
        enter = -1
        for j in range(n):
            if cost[j] > 0:
                enter = j
                break
        if enter == -1:
            break
        # ratio test, Bland tie-break on smallest basis index
        leave = -1
        best: Optional[Fraction] = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][total] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave == -1:
            # unbounded phase-1 objective cannot happen; treat as infeasible
            return None
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [v - f * w for v, w in zip(tab[i], tab[leave])]
        f = cost[enter]
        if f != 0:
            cost = [v - f * w for v, w in zip(cost, tab[leave])]
        basis[leave] = enter

    if cost[total] != 0:
        return None
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tab[i][total]
        elif tab[i][total] != 0:
            return None  # artificial stuck at positive level
    return x
