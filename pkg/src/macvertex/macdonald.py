"""Ordinary Macdonald symmetric functions in the power-sum basis.

The construction is the Gram-Schmidt characterization: P_lam = m_lam plus
dominance-lower monomial corrections, orthogonal under the q,t inner product
<p_lam, p_mu> = delta z_lam prod (1-q^lam_i)/(1-t^lam_i).  Monomial/power-sum
transition matrices are computed once per degree over Q (they carry no q,t)
and cached globally; everything else is field-valued.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

from .partitions import (Partition, b_weight, c_lambda, conjugate, cprime_lambda,
                         dominance_leq, horizontal_strips, mk_partition,
                         partitions, z_factor)
from .scalar import Field, Scalar

__all__ = ["SymFunc", "qt_inner", "macdonald_P", "macdonald_Q", "g_r",
           "pieri_multiply", "pieri_coefficient", "kernel_check"]


class SymFunc:
    """A symmetric function as a finite Scalar combination of p_lam's."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: Dict[Partition, Scalar] | None = None):
        self.field = field
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    @classmethod
    def power_sum(cls, field: Field, lam) -> "SymFunc":
        return cls(field, {mk_partition(lam): field.one})

    def __add__(self, other: "SymFunc") -> "SymFunc":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return SymFunc(self.field, out)

    def __sub__(self, other: "SymFunc") -> "SymFunc":
        return self + other.scale(-self.field.one)

    def scale(self, c: Scalar) -> "SymFunc":
        return SymFunc(self.field, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "SymFunc") -> "SymFunc":
        out: Dict[Partition, Scalar] = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                key = tuple(sorted(ka + kb, reverse=True))
                c = va * vb
                out[key] = out[key] + c if key in out else c
        return SymFunc(self.field, out)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, lam) -> Scalar:
        return self.terms.get(mk_partition(lam), self.field.zero)

    def degrees(self) -> Dict[int, "SymFunc"]:
        out: Dict[int, SymFunc] = {}
        for k, v in self.terms.items():
            out.setdefault(sum(k), SymFunc(self.field)).terms[k] = v
        return out

    def __repr__(self) -> str:
        bits = [f"({v}) p_{list(k)}" for k, v in sorted(self.terms.items())]
        return "SymFunc(" + (" + ".join(bits) if bits else "0") + ")"


def qt_inner(f: SymFunc, g: SymFunc) -> Scalar:
    """<p_lam, p_mu> = delta_{lam,mu} z_lam prod (1-q^lam_i)/(1-t^lam_i), bilinear."""
    field = f.field
    total = field.zero
    for lam, cf in f.terms.items():
        cg = g.terms.get(lam)
        if cg is not None:
            total = total + cf * cg * _p_norm(field, lam)
    return total


def _p_norm(field: Field, lam: Partition) -> Scalar:
    out = field.int(z_factor(lam))
    for x in lam:
        out = out * (field.one - field.q.pow(x)) / (field.one - field.t.pow(x))
    return out


# -- monomial <-> power-sum transitions (q,t-free, cached per degree) --------

@lru_cache(maxsize=None)
def _p_in_m(degree: int) -> Tuple[Tuple[Partition, ...], Tuple[Tuple[int, ...], ...]]:
    """Rows: p_mu expanded over monomial functions m_lam, integer matrix."""
    parts = partitions(degree)
    nvars = max(degree, 1)
    rows = []
    for mu in parts:
        poly: Dict[Tuple[int, ...], int] = {(0,) * nvars: 1}
        for r in mu:
            new: Dict[Tuple[int, ...], int] = {}
            for expo, c in poly.items():
                for i in range(nvars):
                    e2 = list(expo)
                    e2[i] += r
                    key = tuple(e2)
                    new[key] = new.get(key, 0) + c
            poly = new
        row = []
        for lam in parts:
            key = tuple(list(lam) + [0] * (nvars - len(lam)))
            row.append(poly.get(key, 0))
        rows.append(tuple(row))
    return parts, tuple(rows)


@lru_cache(maxsize=None)
def _m_in_p(degree: int) -> Tuple[Tuple[Partition, ...], Tuple[Tuple[Fraction, ...], ...]]:
    """Rows: m_lam expanded over power sums p_mu, exact rational matrix."""
    parts, R = _p_in_m(degree)
    n = len(parts)
    aug = [[Fraction(R[i][j]) for j in range(n)] + [Fraction(i == j) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    # p_mu = sum_lam R[mu][lam] m_lam, hence m_lam = sum_mu (R^{-1})[lam][mu] p_mu.
    inv = tuple(tuple(row[n:]) for row in aug)
    return parts, inv


def _m_func(field: Field, lam: Partition) -> SymFunc:
    """Monomial symmetric function m_lam in the power-sum basis."""
    degree = sum(lam)
    parts, inv = _m_in_p(degree)
    idx = parts.index(lam)
    terms = {}
    for j, mu in enumerate(parts):
        frac = inv[idx][j]
        if frac:
            terms[mu] = field.int(frac.numerator) / field.int(frac.denominator)
    return SymFunc(field, terms)


def macdonald_P(field: Field, lam) -> SymFunc:
    """The Macdonald function P_lam in the power-sum basis (exact).

    Characterized by P_lam = m_lam + (dominance-lower m's) and orthogonality;
    the corrections solve the Gram system over {mu < lam}, which is the joint
    form of Gram-Schmidt along any linear extension of dominance.
    """
    lam = mk_partition(lam)
    cache = field.__dict__.setdefault("_macdonald_cache", {})
    if lam in cache:
        return cache[lam]
    degree = sum(lam)
    lower = [mu for mu in partitions(degree) if mu != lam and dominance_leq(mu, lam)]
    m_lam = _m_func(field, lam)
    if not lower:
        cache[lam] = m_lam
        return m_lam
    m_lower = [_m_func(field, mu) for mu in lower]
    n = len(lower)
    A = [[qt_inner(m_lower[i], m_lower[j]) for j in range(n)] for i in range(n)]
    b = [-qt_inner(m_lam, m_lower[i]) for i in range(n)]
    from . import linalg
    # Gram system rows: <P, m_i> = 0  =>  sum_j c_j <m_j, m_i> = -<m_lam, m_i>
    coeffs = linalg.solve(field, A, b)
    out = m_lam
    for c, mf in zip(coeffs, m_lower):
        out = out + mf.scale(c)
    out = SymFunc(field, {k: v.normalize() for k, v in out.terms.items()})
    cache[lam] = out
    return out


def macdonald_Q(field: Field, lam) -> SymFunc:
    """Q_lam = (c_lam / c'_lam) P_lam, the dual normalization."""
    lam = mk_partition(lam)
    return macdonald_P(field, lam).scale(c_lambda(field, lam) / cprime_lambda(field, lam))


def g_r(field: Field, r: int) -> SymFunc:
    """The Pieri generator: coefficient of y^r in exp(sum (1-t^n)/((1-q^n) n) p_n y^n)."""
    terms: Dict[Partition, Scalar] = {}
    for lam in partitions(r):
        c = field.one / field.int(z_factor(lam))
        for x in lam:
            c = c * (field.one - field.t.pow(x)) / (field.one - field.q.pow(x))
        terms[lam] = c
    if r == 0:
        terms[()] = field.one
    return SymFunc(field, terms)


def pieri_coefficient(field: Field, lam: Partition, mu: Partition) -> Scalar:
    """Coefficient of Q_lam in g_r Q_mu over a horizontal strip lam/mu:
    prod over rows-minus-columns cells of b_mu(s)/b_lam(s)."""
    rows_hit = {i for i in range(1, len(lam) + 1)
                if (lam[i - 1] if i <= len(lam) else 0) > (mu[i - 1] if i <= len(mu) else 0)}
    lam_c, mu_c = conjugate(lam), conjugate(mu)
    cols_hit = {j for j in range(1, len(lam_c) + 1)
                if lam_c[j - 1] > (mu_c[j - 1] if j <= len(mu_c) else 0)}
    out = field.one
    for i in range(1, len(lam) + 1):
        for j in range(1, lam[i - 1] + 1):
            if i in rows_hit and j not in cols_hit:
                out = out * b_weight(field, mu, (i, j)) / b_weight(field, lam, (i, j))
    return out


def pieri_multiply(field: Field, r: int, mu) -> SymFunc:
    """g_r * Q_mu expanded in the Q basis, returned as a power-sum SymFunc.

    The Q-basis coefficients come from the horizontal-strip product formula;
    the returned symmetric function is their combination (so it can be diffed
    against the direct product g_r * Q_mu).
    """
    mu = mk_partition(mu)
    out = SymFunc(field)
    for lam in horizontal_strips(mu, r):
        out = out + macdonald_Q(field, lam).scale(pieri_coefficient(field, lam, mu))
    return out


def pieri_q_coefficients(field: Field, r: int, mu) -> Dict[Partition, Scalar]:
    mu = mk_partition(mu)
    return {lam: pieri_coefficient(field, lam, mu) for lam in horizontal_strips(mu, r)}


def kernel_check(field: Field, degree: int) -> bool:
    """Pi(x,y;q,t) = sum_lam P_lam(x) Q_lam(y), degree by degree up to `degree`.

    Both sides are expanded in the double power-sum basis p_mu(x) p_nu(y).
    """
    for d in range(degree + 1):
        lhs: Dict[Tuple[Partition, Partition], Scalar] = {}
        for nu in partitions(d):
            c = field.one / field.int(z_factor(nu))
            for x in nu:
                c = c * (field.one - field.t.pow(x)) / (field.one - field.q.pow(x))
            lhs[(nu, nu)] = c
        rhs: Dict[Tuple[Partition, Partition], Scalar] = {}
        for lam in partitions(d):
            P = macdonald_P(field, lam)
            Q = macdonald_Q(field, lam)
            for mu, cp in P.terms.items():
                for nu, cq in Q.terms.items():
                    key = (mu, nu)
                    c = cp * cq
                    rhs[key] = rhs[key] + c if key in rhs else c
        keys = set(lhs) | set(rhs)
        for key in keys:
            a = lhs.get(key, field.zero)
            b = rhs.get(key, field.zero)
            if not a.equals(b):
                return False
    return True
