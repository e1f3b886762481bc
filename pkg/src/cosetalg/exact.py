"""Exact rational arithmetic: Gaussian rationals and small linear solvers.

Everything here works over plain Python lists of Fraction / ComplexFraction;
it backs the identity-solving and the "exactly" claims that floating point
cannot honor (division by a non-power-of-two subgroup order rounds).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

FractionVec = list[Fraction]
FractionMat = list[list[Fraction]]


@dataclass(frozen=True)
class ComplexFraction:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def of(cls, re, im=0) -> "ComplexFraction":
        return cls(Fraction(re), Fraction(im))

    def __add__(self, other: "ComplexFraction") -> "ComplexFraction":
        return ComplexFraction(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexFraction") -> "ComplexFraction":
        return ComplexFraction(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "ComplexFraction") -> "ComplexFraction":
        return ComplexFraction(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "ComplexFraction":
        return ComplexFraction(-self.re, -self.im)

    def scale(self, c: Fraction) -> "ComplexFraction":
        c = Fraction(c)
        return ComplexFraction(self.re * c, self.im * c)

    def abs_squared(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


CF_ZERO = ComplexFraction()


def rref(matrix: FractionMat) -> tuple[FractionMat, list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    m = [row[:] for row in matrix]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][col]
        m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [vi - f * vj for vi, vj in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(matrix: FractionMat, ncols: Optional[int] = None) -> list[FractionVec]:
    """Canonical basis of {x : Ax = 0}: one vector per free column,
    with 1 in the free slot and pivot entries solved from the RREF."""
    if not matrix:
        return [unit_vector(ncols, j) for j in range(ncols or 0)]
    ncols = len(matrix[0])
    m, pivots = rref(matrix)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for j in free:
        v = [Fraction(0)] * ncols
        v[j] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][j]
        basis.append(v)
    return basis


def solve(matrix: FractionMat, rhs: FractionVec) -> Optional[FractionVec]:
    """One exact solution of Ax = b with free variables set to 0,
    or None when the system is inconsistent."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    aug = [row[:] + [b] for row, b in zip(matrix, rhs)]
    m, pivots = rref(aug)
    for r in range(len(m)):
        if all(v == 0 for v in m[r][:ncols]) and m[r][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        if pc == ncols:
            return None  # pivot in the rhs column: inconsistent
        x[pc] = m[r][ncols]
    return x


def unit_vector(n: int, j: int) -> FractionVec:
    v = [Fraction(0)] * n
    v[j] = Fraction(1)
    return v


# --- exact convolution-side helpers -------------------------------------
#
# These mirror the float operations in measures/quotient_ops/quotient_algebra
# over ComplexFraction weights, taking raw index tables as input.

def group_convolve_exact(mul, w1: Sequence[ComplexFraction],
                         w2: Sequence[ComplexFraction]) -> list[ComplexFraction]:
    n = len(w1)
    out = [CF_ZERO] * n
    for x in range(n):
        wx = w1[x]
        if wx.is_zero():
            continue
        row = mul[x]
        for y in range(n):
            wy = w2[y]
            if wy.is_zero():
                continue
            z = int(row[y])
            out[z] = out[z] + wx * wy
    return out


def pushforward_exact(coset_of, coset_count: int,
                      w: Sequence[ComplexFraction]) -> list[ComplexFraction]:
    out = [CF_ZERO] * coset_count
    for y, wy in enumerate(w):
        c = int(coset_of[y])
        out[c] = out[c] + wy
    return out


def lift_exact(coset_of, subgroup_order: int,
               s: Sequence[ComplexFraction]) -> list[ComplexFraction]:
    inv_h = Fraction(1, subgroup_order)
    return [s[int(coset_of[y])].scale(inv_h) for y in range(len(coset_of))]


def quotient_convolve_exact(counts, denominator: int,
                            s1: Sequence[ComplexFraction],
                            s2: Sequence[ComplexFraction]) -> list[ComplexFraction]:
    k = len(s1)
    out = [CF_ZERO] * k
    for a in range(k):
        if s1[a].is_zero():
            continue
        for b in range(k):
            if s2[b].is_zero():
                continue
            w = s1[a] * s2[b]
            row = counts[a][b]
            for z in range(k):
                cz = int(row[z])
                if cz:
                    out[z] = out[z] + w.scale(Fraction(cz, denominator))
    return out
