import pytest

from macvertex.fock import FockVector
from macvertex.genmac import GenMac
from macvertex.scalar import Field
from macvertex.screened import (R_coefficient, genmac_via_screened,
                                screened_matrix_element, singular_vector,
                                singular_vector_annihilation, x0_exchange_check)


@pytest.fixture(scope="module")
def gm1():
    field = Field(["p", "s", "u1"])
    return GenMac(field, 1, field.u(1))


@pytest.fixture(scope="module")
def gm2():
    field = Field(["p", "s", "u1", "u2"])
    return GenMac(field, 2, field.u(2))


def assert_screened_matches(gm, lam, profile):
    field = gm.field
    vec = genmac_via_screened(field, lam, profile, gm.u)
    target = gm.Q_state(lam).scale(R_coefficient(field, lam, profile, gm.u))
    keys = set(vec.terms) | set(target.terms)
    for k in keys:
        assert vec.coefficient(k).equals(target.coefficient(k)), (lam, profile, k)


class TestMatrixElements:
    def test_vacuum_constant_term(self, f_u1):
        me = screened_matrix_element(f_u1, 1, 0, f_u1.u(1),
                                     FockVector.vacuum(f_u1, 1, "bra"))
        assert set(me) == {(0,)}
        assert me[(0,)].equals(f_u1.one)

    def test_creation_coefficient(self, f_u1):
        bra = FockVector(f_u1, 1, "bra", {((1,),): f_u1.one})
        me = screened_matrix_element(f_u1, 1, 0, f_u1.u(1), bra)
        # A_1 rho_1 = (1-t)/(1-q) * (1-q)/(1-t) = 1 at x^1
        assert set(me) == {(1,)}
        assert me[(1,)].equals(f_u1.one)

    def test_screened_vertex_vacuum(self, f_u2):
        me = screened_matrix_element(f_u2, 2, 1, f_u2.u(2),
                                     FockVector.vacuum(f_u2, 2, "bra"))
        assert me[(0,)].equals(f_u2.one)

    def test_screened_level1_window(self, f_u2):
        bra = FockVector(f_u2, 2, "bra", {((), (1,)): f_u2.one})
        me = screened_matrix_element(f_u2, 2, 1, f_u2.u(2), bra)
        assert me, "level-1 overlap must be nonempty"


class TestRCoefficient:
    def test_trivial_cases(self, f_u2):
        u = f_u2.u(2)
        assert R_coefficient(f_u2, ((), ()), [1, 1], u).equals(f_u2.one)

    def test_n1_always_one(self, f_u1):
        assert R_coefficient(f_u1, ((2, 1),), [3], f_u1.u(1)).equals(f_u1.one)

    def test_n2_single_box_value(self, f_u2):
        field = f_u2
        u = field.u(2)
        q, t = field.q, field.t
        got = R_coefficient(field, ((), (1,)), [1, 1], u)
        want = field.gamma * field.qpoch_ratio(u[0] / u[1], q * t.inverse() * u[0] / u[1], -1)
        assert got.equals(want)


class TestConstruction:
    def test_n1_single_box(self, gm1):
        assert_screened_matches(gm1, ((1,),), [1])

    def test_n1_level2(self, gm1):
        assert_screened_matches(gm1, ((2,),), [2])
        assert_screened_matches(gm1, ((1, 1),), [2])

    def test_n2_profile11(self, gm2):
        assert_screened_matches(gm2, ((), ()), [1, 1])
        assert_screened_matches(gm2, ((1,), ()), [1, 1])
        assert_screened_matches(gm2, ((), (1,)), [1, 1])

    @pytest.mark.slow
    def test_n2_level2(self, gm2):
        assert_screened_matches(gm2, ((1,), (1,)), [1, 1])
        assert_screened_matches(gm2, ((), (2,)), [0, 2])


class TestZeroModeExchange:
    def test_n1_profile2(self, f_u1):
        assert x0_exchange_check(f_u1, [2], f_u1.u(1), 1)

    def test_n2_profile11(self, f_u2):
        assert x0_exchange_check(f_u2, [1, 1], f_u2.u(2), 1)


class TestSingularVectors:
    def test_level_one_annihilation(self, f_u2):
        nz, ann = singular_vector_annihilation(f_u2, 2, 1, 1, 1)
        assert nz and ann

    def test_vector_is_level_rs(self, f_u2):
        u = list(f_u2.u(2))
        u[0] = f_u2.q.pow(2) * f_u2.t.pow(-1) * u[1]
        chi = singular_vector(f_u2, 2, 1, 1, 2, u)
        assert chi.level() == 2
        assert not chi.is_zero()

    def test_requires_screening_slot(self, f_u1):
        with pytest.raises(ValueError):
            singular_vector(f_u1, 1, 1, 1, 1, f_u1.u(1))
