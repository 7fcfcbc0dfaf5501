import pytest
from hypothesis import given, settings, strategies as st

from macvertex.scalar import Field, PoleError, Scalar, ScalarParseError


def scalars(field, max_terms=3):
    """Hypothesis strategy for random small scalars of the given field."""
    gens = [field.sym(name) for name in field.symbols]

    @st.composite
    def build(draw):
        total = field.zero
        for _ in range(draw(st.integers(1, max_terms))):
            coeff = field.int(draw(st.integers(-4, 4)))
            term = coeff
            for g in gens:
                term = term * g.pow(draw(st.integers(0, 2)))
            total = total + term
        den = field.one + field.p * field.int(draw(st.integers(0, 2)))
        return total / den

    return build()


class TestQPochhammer:
    def test_empty_product(self, f_qt):
        a = f_qt.p
        assert f_qt.qpoch(a, 0).equals(f_qt.one)

    def test_length_two(self, f_qt):
        a = f_qt.s
        want = (f_qt.one - a) * (f_qt.one - f_qt.q * a)
        assert f_qt.qpoch(a, 2).equals(want)

    def test_negative_branch(self, f_qt):
        a = f_qt.s
        want = f_qt.one / (f_qt.one - a / f_qt.q)
        assert f_qt.qpoch(a, -1).equals(want)

    def test_negative_branch_pole(self, f_qt):
        with pytest.raises(PoleError):
            f_qt.qpoch(f_qt.q, -1)

    @settings(max_examples=25, deadline=None)
    @given(m=st.integers(-3, 3), data=st.data())
    def test_recurrence(self, f_qt, m, data):
        # (a; q)_{m+1} = (a; q)_m (1 - q^m a)
        a = data.draw(scalars(f_qt))
        try:
            lhs = f_qt.qpoch(a, m + 1)
            rhs = f_qt.qpoch(a, m) * (f_qt.one - f_qt.q.pow(m) * a)
        except PoleError:
            return
        assert lhs.equals(rhs)

    def test_ratio_negative_index_zero(self, f_qt):
        # (s;q)_{-1}/(q;q)_{-1} continues to (1 - q^{-1} q)/(1 - q^{-1} s) = 0
        assert f_qt.qpoch_ratio(f_qt.s, f_qt.q, -1).is_zero()


class TestEquality:
    def test_telescoping(self, f_qt):
        q = f_qt.q
        lhs = (f_qt.one - q * q) / (f_qt.one - q)
        assert lhs.equals(f_qt.one + q)

    def test_gamma_square(self, f_qt):
        assert f_qt.gamma.pow(2).equals(f_qt.t / f_qt.q)

    def test_inequality(self, f_qt):
        q, t = f_qt.q, f_qt.t
        lhs = (f_qt.one - q * t) / (f_qt.one - t)
        assert not lhs.equals(f_qt.one + q)

    def test_probabilistic_no_is_authoritative(self, f_qt):
        assert not f_qt.p.equals(f_qt.s, probabilistic=True)

    def test_common_factor_invariance(self, f_qt):
        x = (f_qt.one + f_qt.q) / (f_qt.one - f_qt.t)
        blowup = Scalar(f_qt, x.num * (f_qt.one - f_qt.p).num, x.den * (f_qt.one - f_qt.p).num)
        assert x.equals(blowup)


class TestFieldAxioms:
    @settings(max_examples=20, deadline=None)
    @given(data=st.data())
    def test_ring_axioms(self, f_qt, data):
        a = data.draw(scalars(f_qt))
        b = data.draw(scalars(f_qt))
        c = data.draw(scalars(f_qt))
        assert ((a + b) + c).equals(a + (b + c))
        assert ((a * b) * c).equals(a * (b * c))
        assert (a * (b + c)).equals(a * b + a * c)
        assert (a + b).equals(b + a)

    @settings(max_examples=20, deadline=None)
    @given(data=st.data())
    def test_inverse(self, f_qt, data):
        a = data.draw(scalars(f_qt))
        if a.is_zero():
            return
        assert (a * a.inverse()).equals(f_qt.one)


class TestSubstitution:
    def test_kills_difference(self, f_std2):
        t = f_std2.t
        u1, u2 = f_std2.sym("u1"), f_std2.sym("u2")
        expr = u1 - t * u2
        assert expr.substitute({"u1": t * u2}).is_zero()

    def test_qpoch_substitution(self, f_std1):
        a = f_std1.sym("u1")
        val = f_std1.qpoch(a, 1).substitute({"u1": f_std1.q})
        assert val.equals(f_std1.one - f_std1.q)

    def test_gamma_power(self, f_qt):
        val = f_qt.gamma.pow(6)
        assert val.equals((f_qt.t / f_qt.q).pow(3))

    def test_denominator_vanishes(self, f_std1):
        u1 = f_std1.sym("u1")
        bad = f_std1.one / (u1 - f_std1.one)
        with pytest.raises(PoleError):
            bad.substitute({"u1": f_std1.one})


class TestTextForm:
    def test_rewrites_sugar(self, f_qt):
        assert str(f_qt.parse("gamma^2")) == "s^2/p^2"
        assert str(f_qt.parse("q")) == "p^2"

    def test_round_trip(self, f_std2):
        expr = "(2*q*u1 - t^2*v2 + 3)/(1 - q*t*w)"
        val = f_std2.parse(expr)
        assert f_std2.parse(str(val)).equals(val)

    def test_parse_error_position(self, f_qt):
        with pytest.raises(ScalarParseError):
            f_qt.parse("q + unknown_symbol")

    def test_canonical_order_is_stable(self, f_std1):
        a = f_std1.parse("u1 + q")
        b = f_std1.parse("q + u1")
        assert str(a) == str(b)

    def test_pochhammer_sugar(self, f_std1):
        val = f_std1.parse("(u1;q)_2").substitute({"u1": f_std1.q})
        want = (f_std1.one - f_std1.q) * (f_std1.one - f_std1.q.pow(2))
        assert val.equals(want)
