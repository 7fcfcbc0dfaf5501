"""Heavier spec invariants kept out of the default fast loop."""

import pytest

from macvertex.mukade import Mukade
from macvertex.partitions import ntuples
from macvertex.scalar import Field
from macvertex.screened import x0_exchange_check

pytestmark = pytest.mark.slow


def test_x0_exchange_two_screenings():
    field = Field(["p", "s", "u1", "u2"])
    assert x0_exchange_check(field, [0, 2], field.u(2), 1)


def test_x0_exchange_level2():
    field = Field(["p", "s", "u1", "u2"])
    assert x0_exchange_check(field, [1, 1], field.u(2), 2)


def test_mode_relation_operator_identity_n2():
    """The defining exchange relation contracted on N=2 PBW states, for both
    generator indices and |n| <= 2, through level-1 bras and kets."""
    field = Field.standard(2)
    M = Mukade(field, 2, field.u(2), field.v(2), field.sym("w"))
    w = field.sym("w")
    states = ntuples(0, 2) + ntuples(1, 2)
    for i in (1, 2):
        tq = (field.t / field.q).pow(i)
        for lam in states:
            for mu in states:
                for n in (-2, -1, 0, 1, 2):
                    bra = M.bra_rep.pbw(lam, "bra")
                    lhs = field.zero
                    for nu, c in M.bra_rep.pbw_expand(M.bra_rep.apply_X(i, n, bra)).items():
                        lhs = lhs + c * M.element(nu, mu)
                    for nu, c in M.bra_rep.pbw_expand(M.bra_rep.apply_X(i, n - 1, bra)).items():
                        lhs = lhs - w * c * M.element(nu, mu)
                    ket = M.ket_rep.pbw(mu, "ket")
                    rhs = field.zero
                    for rho, c in M.ket_rep.pbw_expand(M.ket_rep.apply_X(i, n, ket)).items():
                        rhs = rhs + c * M.element(lam, rho)
                    for rho, c in M.ket_rep.pbw_expand(M.ket_rep.apply_X(i, n - 1, ket)).items():
                        rhs = rhs - tq * w * c * M.element(lam, rho)
                    assert lhs.equals(rhs), (i, lam, mu, n)
