"""Small exact linear algebra over the Scalar fraction field.

Multivariate gcd is the enemy here: fraction-field Gaussian elimination
spends all its time reducing.  Instead, systems are cleared to polynomial
matrices (row denominators multiplied through) and handled fraction-free:
Bareiss elimination for determinants, cofactor expansion for inverses.
Every division is exact polynomial division; results come back as unreduced
Scalars sharing the determinant as denominator.
"""

from __future__ import annotations

from typing import List, Sequence

from .scalar import Field, Scalar

Matrix = List[List[Scalar]]

__all__ = ["solve", "inverse", "det"]


def _cleared(field: Field, A: Sequence[Sequence[Scalar]]):
    """(B, D): B = diag(D) A with polynomial entries, D_i = lcm of row dens.

    Entries are gcd-normalized first so the row lcm (built by gcd chaining on
    the small reduced denominators) stays close to the true common factor;
    this is what keeps the Bareiss intermediates compact.
    """
    B = []
    D = []
    for row in A:
        red = [x.normalize() for x in row]
        lcm = field._one
        for x in red:
            if len(x.den) == 1 and len(lcm) == 1:
                # monomial lcm: componentwise max exponents, lcm of contents
                lcm = _monomial_lcm(field, lcm, x.den)
            else:
                g = lcm.gcd(x.den)
                lcm = lcm.exquo(g) * x.den
        B.append([x.num * lcm.exquo(x.den) for x in red])
        D.append(lcm)
    return B, D


def _monomial_lcm(field: Field, a, b):
    (ma, ca), = a.iterterms()
    (mb, cb), = b.iterterms()
    from math import gcd as _igcd
    ca, cb = int(ca), int(cb)
    content = abs(ca * cb) // _igcd(abs(ca), abs(cb))
    monom = tuple(max(x, y) for x, y in zip(ma, mb))
    return field.ring.from_dict({monom: content})


def _bareiss_det(field: Field, M: List[list]):
    """Fraction-free determinant of a polynomial matrix.

    Pivots are chosen sparsest-first (fewest terms) with row and column
    swaps, which substantially curbs intermediate growth on the structured
    matrices showing up here.
    """
    n = len(M)
    if n == 0:
        return field._one
    M = [list(row) for row in M]
    sign = 1
    prev = field._one
    for k in range(n - 1):
        best = None
        for r in range(k, n):
            for c in range(k, n):
                if M[r][c] and (best is None or len(M[r][c]) < best[0]):
                    best = (len(M[r][c]), r, c)
        if best is None:
            return field._zero
        _, r, c = best
        if r != k:
            M[k], M[r] = M[r], M[k]
            sign = -sign
        if c != k:
            for row in M:
                row[k], row[c] = row[c], row[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[k][k] * M[i][j] - M[i][k] * M[k][j]
                M[i][j] = num.exquo(prev)
            M[i][k] = field._zero
        prev = M[k][k]
    return M[n - 1][n - 1] if sign > 0 else -M[n - 1][n - 1]


def _cofactors(field: Field, B: List[list]):
    """(det, C) with C[i][j] the (i,j) cofactor of the polynomial matrix B."""
    n = len(B)
    detB = _bareiss_det(field, B)
    if not detB:
        raise ZeroDivisionError("singular linear system")
    C = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [[B[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            minor = _bareiss_det(field, sub)
            C[i][j] = minor if (i + j) % 2 == 0 else -minor
    return detB, C


class PreparedSolve:
    """Factor a Scalar matrix once (cleared cofactors), then solve many RHS."""

    def __init__(self, field: Field, A: Sequence[Sequence[Scalar]]):
        self.field = field
        self.n = len(A)
        B, self.D = _cleared(field, A)
        self.detB, self.C = _cofactors(field, B)

    def solve(self, b: Sequence[Scalar]) -> List[Scalar]:
        field = self.field
        rhs = [(Scalar(field, self.D[i], field._one) * b[i]).normalize()
               for i in range(self.n)]
        # prefix/suffix products of the rhs denominators for the common clearing
        pre = [field._one]
        for x in rhs:
            pre.append(pre[-1] * x.den)
        suf = [field._one]
        for x in reversed(rhs):
            suf.append(suf[-1] * x.den)
        suf.reverse()
        out = []
        for j in range(self.n):
            total = field._zero
            for i in range(self.n):
                if rhs[i].is_zero():
                    continue
                total = total + rhs[i].num * self.C[i][j] * pre[i] * suf[i + 1]
            out.append(Scalar(field, total, self.detB * pre[self.n]).normalize())
        return out


def solve(field: Field, A: Sequence[Sequence[Scalar]], b: Sequence[Scalar]) -> List[Scalar]:
    """Solve A x = b exactly (Cramer over the cleared matrix); raises when singular."""
    return PreparedSolve(field, A).solve(b)


def inverse(field: Field, A: Sequence[Sequence[Scalar]]) -> Matrix:
    """A^{-1} = adj(B) diag(D) / det(B), all divisions exact and gcd-free."""
    B, D = _cleared(field, A)
    detB, C = _cofactors(field, B)
    n = len(B)
    return [[Scalar(field, C[j][i] * D[j], detB) for j in range(n)] for i in range(n)]


def det(field: Field, A: Sequence[Sequence[Scalar]]) -> Scalar:
    """Determinant of a Scalar matrix: det(B) / prod(D)."""
    B, D = _cleared(field, A)
    detB = _bareiss_det(field, B)
    denom = field._one
    for d in D:
        denom = denom * d
    return Scalar(field, detB, denom)
