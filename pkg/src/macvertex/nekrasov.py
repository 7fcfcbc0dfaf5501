"""Nekrasov factors, their vanishing criterion, and the closed-form
conformal-block / partition-function summation they assemble into."""

from __future__ import annotations

from typing import List, Sequence

from .partitions import (arm_leg, cells, contains, mk_partition, ntuples,
                         truncate_B)
from .scalar import Field, Scalar

__all__ = ["nekrasov", "nekrasov_vanishes", "conformal_block"]


def nekrasov(field: Field, lam, mu, u: Scalar) -> Scalar:
    """N_{lam,mu}(u) = prod_{s in lam} (1 - u q^{a_lam(s)} t^{l_mu(s)+1})
                      prod_{s in mu}  (1 - u q^{-a_mu(s)-1} t^{-l_lam(s)})."""
    lam, mu = mk_partition(lam), mk_partition(mu)
    q, t = field.q, field.t
    out = field.one
    for i, j in cells(lam):
        a = arm_leg(lam, i, j)[0]
        l = arm_leg(mu, i, j)[1]
        out = out * (field.one - u * q.pow(a) * t.pow(l + 1))
    for i, j in cells(mu):
        a = arm_leg(mu, i, j)[0]
        l = arm_leg(lam, i, j)[1]
        out = out * (field.one - u * q.pow(-a - 1) * t.pow(-l))
    return out


def nekrasov_vanishes(lam, mu, n: int, m: int) -> bool:
    """Containment criterion for N_{lam,mu}(q^n t^m) = 0.

    Branch (m >= 0, n <= 0): nonzero iff mu contains B_{-n,m}(lam).
    Branch (m <= -1, n >= 1): nonzero iff lam contains B_{n-1,-m-1}(mu).
    Outside both branches the criterion does not apply.
    """
    lam, mu = mk_partition(lam), mk_partition(mu)
    if m >= 0 and n <= 0:
        return not contains(mu, truncate_B(lam, -n, m))
    if m <= -1 and n >= 1:
        return not contains(lam, truncate_B(mu, n - 1, -m - 1))
    raise ValueError("(n, m) outside both branches of the vanishing criterion")


def conformal_block(field: Field, N: int, w: Sequence[Scalar], v: Sequence[Scalar],
                    u: Sequence[Scalar], k_max: int) -> List[Scalar]:
    """Per-order coefficients of the two-vertex vacuum expectation in the
    expansion variable e_N(u) z_2 / (e_N(v) z_1):

        sum_{|lam|=k} prod_{i,j} N_{0,lam^(j)}(q w_i/t v_j) N_{lam^(i),0}(q v_i/t u_j)
                                 / N_{lam^(i),lam^(j)}(q v_i/t v_j).
    """
    q, t = field.q, field.t
    out: List[Scalar] = []
    for k in range(k_max + 1):
        total = field.zero
        for lam in ntuples(k, N):
            num = field.one
            den = field.one
            for i in range(N):
                for j in range(N):
                    num = num * nekrasov(field, (), lam[j], q * w[i] / (t * v[j]))
                    num = num * nekrasov(field, lam[i], (), q * v[i] / (t * u[j]))
                    den = den * nekrasov(field, lam[i], lam[j], q * v[i] / (t * v[j]))
            total = total + num / den
        out.append(total.normalize())
    return out
