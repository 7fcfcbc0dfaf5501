import pytest

from macvertex.fock import fock_pairing
from macvertex.genmac import GenMac, eigenvalue_weight
from macvertex.partitions import mk_ntuple, ntuples, star_compare
from macvertex.scalar import Field


@pytest.fixture(scope="module")
def gm1():
    field = Field(["p", "s", "u1"])
    return GenMac(field, 1, field.u(1))


@pytest.fixture(scope="module")
def gm2():
    field = Field(["p", "s", "u1", "u2"])
    return GenMac(field, 2, field.u(2))


class TestEigenvalues:
    def test_vacuum(self, gm2):
        field = gm2.field
        want = field.sym("u1") + field.sym("u2")
        assert gm2.eigenvalue(mk_ntuple([[], []])).equals(want)

    def test_single_box_weight(self, gm1):
        field = gm1.field
        q, t = field.q, field.t
        want = field.one + (q - field.one) * (t - field.one) / t
        assert eigenvalue_weight(field, (1,)).equals(want)

    def test_mixed(self, gm2):
        field = gm2.field
        q, t = field.q, field.t
        u1, u2 = field.sym("u1"), field.sym("u2")
        want = u1 * (field.one + (q - field.one) * (t - field.one) / t) + u2
        assert gm2.eigenvalue(mk_ntuple([[1], []])).equals(want)


class TestEigenvectors:
    def test_n1_is_plain_macdonald(self, gm1):
        # no corrections for N = 1: the product state is already the eigenvector
        for lam in [((2,),), ((1, 1),), ((2, 1),)]:
            P = gm1.P_state(lam)
            prod = gm1.product_state(lam)
            diff = P - prod
            assert not diff.terms

    @pytest.mark.parametrize("level", [1, 2, 3])
    def test_eigen_relation_n1(self, gm1, level):
        for lam in ntuples(level, 1):
            vec = gm1.P_state(lam)
            img = gm1.rep.apply_X(1, 0, vec)
            eps = gm1.eigenvalue(lam)
            diff = img - vec.scale(eps)
            assert not diff.terms, lam

    @pytest.mark.parametrize("level", [1, 2])
    def test_eigen_relation_n2(self, gm2, level):
        for lam in ntuples(level, 2):
            vec = gm2.P_state(lam)
            img = gm2.rep.apply_X(1, 0, vec)
            diff = img - vec.scale(gm2.eigenvalue(lam))
            assert not diff.terms, lam

    def test_eigen_relation_n3_level1(self):
        field = Field(["p", "s", "u1", "u2", "u3"])
        gm3 = GenMac(field, 3, field.u(3))
        for lam in ntuples(1, 3):
            vec = gm3.P_state(lam)
            img = gm3.rep.apply_X(1, 0, vec)
            diff = img - vec.scale(gm3.eigenvalue(lam))
            assert not diff.terms, lam

    def test_triangularity_of_coefficients(self, gm2):
        for lam in ntuples(2, 2):
            coeffs = gm2.triangular_coefficients(lam)
            for mu, c in coeffs.items():
                if mu == lam:
                    assert c.equals(gm2.field.one)
                else:
                    assert star_compare(mu, lam) == "less"


class TestBiorthogonality:
    @pytest.mark.parametrize("level", [1, 2])
    def test_pq_duality(self, gm2, level):
        field = gm2.field
        for lam in ntuples(level, 2):
            for mu in ntuples(level, 2):
                val = fock_pairing(gm2.P_state(lam, "bra"), gm2.Q_state(mu, "ket"))
                want = field.one if lam == mu else field.zero
                assert val.equals(want), (lam, mu)

    def test_orthogonality_suite(self, gm2):
        assert gm2.orthogonality_check(1)
        assert gm2.orthogonality_check(2)


class TestIntegralForms:
    def test_alpha_conjecture_column(self, gm2):
        """The published conjecture: the coefficient on ((1^n), 0, ..) is 1."""
        for level in (1, 2):
            for lam in ntuples(level, 2):
                row = gm2.alpha_row(lam, "+")
                column = mk_ntuple([[1] * level, []])
                assert row.get(column, gm2.field.zero).equals(gm2.field.one), lam
                row_m = gm2.alpha_row(lam, "-")
                assert row_m.get(column, gm2.field.zero).equals(gm2.field.one), lam

    def test_level1_k_equals_x(self, gm1):
        # |X_(1)> = |K_(1)> for N = 1
        row = gm1.alpha_row(((1,),), "+")
        assert row == {((1,),): row[((1,),)]}
        assert row[((1,),)].equals(gm1.field.one)

    def test_norms(self, gm1, gm2):
        for lam in [((1,),), ((2,),), ((1, 1),), ((2, 1),)]:
            assert gm1.norm_check(lam)
        for lam in ntuples(1, 2) + ntuples(2, 2):
            assert gm2.norm_check(lam)

    def test_norm_level1_value(self, gm1):
        """<K_(1)|K_(1)> = -u1^2 (1-q)(1-1/t), computed from free fields."""
        field = gm1.field
        lam = ((1,),)
        lhs = fock_pairing(gm1.K_state(lam, "bra"), gm1.K_state(lam, "ket"))
        u1 = field.sym("u1")
        want = -u1 * u1 * (field.one - field.q) * (field.one - field.t.inverse())
        assert lhs.equals(want)

    def test_eigenvalue_collision_guard(self):
        # at u1 = u2 the two single-box eigenvalues coincide, so the state
        # that needs a correction across that gap must refuse
        field = Field(["p", "s", "u1", "u2"])
        gm = GenMac(field, 2, (field.one, field.one))
        with pytest.raises(ZeroDivisionError):
            gm.P_state(mk_ntuple([[], [1]]))
