import itertools

import pytest

from macvertex.nekrasov import conformal_block, nekrasov, nekrasov_vanishes
from macvertex.partitions import (c_lambda, cprime_lambda, flaming_factors,
                                  n_weight, conjugate, partitions)
from macvertex.scalar import Field


@pytest.fixture(scope="module")
def fu():
    return Field(["p", "s", "u1"])


class TestNekrasovFactor:
    def test_empty(self, fu):
        assert nekrasov(fu, (), (), fu.sym("u1")).equals(fu.one)

    def test_single_single(self, fu):
        u = fu.sym("u1")
        want = (fu.one - u * fu.t) * (fu.one - u / fu.q)
        assert nekrasov(fu, (1,), (1,), u).equals(want)

    def test_empty_single(self, fu):
        u = fu.sym("u1")
        want = fu.one - u * fu.t / fu.q
        assert nekrasov(fu, (), (1,), u).equals(want)


class TestVanishing:
    def test_brute_force_table(self, f_qt):
        """The containment criterion against direct evaluation at u = q^n t^m,
        for |lam|, |mu| <= 3 and |n|, |m| <= 2."""
        pool = [lam for k in range(4) for lam in partitions(k)]
        for lam, mu in itertools.product(pool, pool):
            for n in range(-2, 3):
                for m in range(-2, 3):
                    if not ((m >= 0 and n <= 0) or (m <= -1 and n >= 1)):
                        continue
                    u = f_qt.q.pow(n) * f_qt.t.pow(m)
                    value_zero = nekrasov(f_qt, lam, mu, u).is_zero()
                    assert value_zero == nekrasov_vanishes(lam, mu, n, m), \
                        (lam, mu, n, m)

    def test_branch_precondition(self):
        with pytest.raises(ValueError):
            nekrasov_vanishes((1,), (1,), 1, 0)

    def test_remark_discrepancy_documented(self, f_qt):
        """The text's remark claims N_{0,mu}(t) != 0 iff mu is a single row;
        direct evaluation shows N_{0,(1,1)}(t) != 0 as well, consistent with
        the containment criterion (B_{0,1}(0) = 0 is contained in anything).
        The criterion, not the remark, is what the artifact encodes."""
        t = f_qt.t
        assert not nekrasov(f_qt, (), (1, 1), t).is_zero()
        assert not nekrasov_vanishes((), (1, 1), 0, 1)


class TestIdentities:
    def test_reflection(self, fu):
        """N_{lm}(x/gamma) = N_{ml}(1/(gamma x)) x^{|l|+|m|} f_l/f_m."""
        x = fu.sym("u1")
        gamma = fu.gamma
        pool = [lam for k in range(4) for lam in partitions(k)]
        for lam, mu in itertools.product(pool, pool):
            lhs = nekrasov(fu, lam, mu, x / gamma)
            fl = flaming_factors(fu, lam)[0]
            fm = flaming_factors(fu, mu)[0]
            rhs = nekrasov(fu, mu, lam, x.inverse() / gamma) \
                * x.pow(sum(lam) + sum(mu)) * fl / fm
            assert lhs.equals(rhs), (lam, mu)

    def test_cc_prime(self, f_qt):
        """c_lam c'_lam = (-1)^|lam| q^{n(lam')+|lam|} t^{n(lam)} N_{ll}(1)."""
        for k in range(5):
            for lam in partitions(k):
                lhs = c_lambda(f_qt, lam) * cprime_lambda(f_qt, lam)
                sign = f_qt.one if sum(lam) % 2 == 0 else -f_qt.one
                rhs = sign * f_qt.q.pow(n_weight(conjugate(lam)) + sum(lam)) \
                    * f_qt.t.pow(n_weight(lam)) * nekrasov(f_qt, lam, lam, f_qt.one)
                assert lhs.equals(rhs), lam

    def test_row_increment_ratio(self, fu):
        """Incrementing lam_i multiplies N_{lm}(u) by the published ratio."""
        u = fu.sym("u1")
        q, t = fu.q, fu.t
        cases = [((2, 1), (1,), 1), ((2, 2), (2, 1), 1), ((1,), (1, 1), 1),
                 ((2, 1), (2,), 2)]
        for lam, mu, i in cases:
            grown = list(lam)
            grown[i - 1] += 1
            lhs = nekrasov(fu, tuple(grown), mu, u) / nekrasov(fu, lam, mu, u)
            chi = q.pow(lam[i - 1]) * t.pow(1 - i)
            rhs = fu.one - u * t.pow(len(mu)) * chi
            for j in range(1, len(mu) + 1):
                rhs = rhs * (fu.one - u * q.pow(-mu[j - 1]) * t.pow(j - 1) * chi) \
                    / (fu.one - u * q.pow(-mu[j - 1]) * t.pow(j) * chi)
            assert lhs.equals(rhs), (lam, mu, i)


class TestConformalBlock:
    def test_order_zero(self):
        field = Field(["p", "s", "u1", "v1", "w1"])
        coeffs = conformal_block(field, 1, (field.sym("w1"),), field.v(1), field.u(1), 0)
        assert coeffs[0].equals(field.one)

    def test_order_one_shape(self):
        field = Field(["p", "s", "u1", "v1", "w1"])
        q, t = field.q, field.t
        w1, v1, u1 = field.sym("w1"), field.sym("v1"), field.sym("u1")
        coeffs = conformal_block(field, 1, (w1,), (v1,), (u1,), 1)
        want = nekrasov(field, (), (1,), q * w1 / (t * v1)) \
            * nekrasov(field, (1,), (), q * v1 / (t * u1)) \
            / nekrasov(field, (1,), (1,), q / t)
        assert coeffs[1].equals(want)
