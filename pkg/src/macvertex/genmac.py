"""Generalized Macdonald functions on the N-fold Fock tensor space.

|P_lam> is the X^(1)_0 eigenvector that is unitriangular against products of
ordinary Macdonald functions in the star order.  Within an equal-size-profile
block the product basis already consists of eigen-candidates whose
off-diagonal images lie strictly star-below, so the solve needs no intra-block
linear algebra: coefficients come out one at a time along any linear
extension of the order.

|K_lam> is the integral form C^(+) |P_lam> whose Mukade matrix elements
factorize; alpha tables express K in the PBW basis through the level Gram
matrices.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from . import linalg
from .fock import FockRep, FockVector, fock_pairing
from .macdonald import macdonald_P
from .nekrasov import nekrasov
from .partitions import (NTuple, Partition, c_lambda, conjugate, cprime_lambda,
                         flaming_factors, mk_ntuple, n_weight, ntuples,
                         star_compare, tuple_size)
from .scalar import Field, Scalar

__all__ = ["GenMac", "eigenvalue_weight"]


def eigenvalue_weight(field: Field, lam: Partition) -> Scalar:
    """e_lam = 1 + (t-1) sum_i (q^{lam_i} - 1) t^{-i}."""
    q, t = field.q, field.t
    total = field.one
    for i, row in enumerate(lam, start=1):
        total = total + (t - field.one) * (q.pow(row) - field.one) * t.pow(-i)
    return total


class GenMac:
    """Generalized Macdonald machinery bound to one (N, u) representation."""

    def __init__(self, field: Field, N: int, u: Sequence[Scalar]):
        self.field = field
        self.N = N
        self.u = tuple(field._coerce(x) for x in u)
        self.rep = FockRep(field, N, self.u)
        self._level: Dict[int, dict] = {}
        self._P: Dict[Tuple[str, NTuple], FockVector] = {}

    # -- eigenvalues -----------------------------------------------------------

    def eigenvalue(self, lam: NTuple) -> Scalar:
        """epsilon_lam(u) = sum_k u_k e_{lam^(k)}."""
        total = self.field.zero
        for uk, comp in zip(self.u, lam):
            total = total + uk * eigenvalue_weight(self.field, comp)
        return total

    # -- the product-Macdonald basis --------------------------------------------

    def product_state(self, lam: NTuple, side: str = "ket") -> FockVector:
        """prod_i P_{lam^(i)}(a^(i)) applied to the (dual) vacuum."""
        field = self.field
        factors = [macdonald_P(field, comp).terms for comp in lam]
        out: Dict[NTuple, Scalar] = {}
        stack = [((), field.one)]
        for f in factors:
            stack = [(key + (nu,), c * cf) for key, c in stack for nu, cf in f.items()]
        for key, c in stack:
            out[key] = out[key] + c if key in out else c
        return FockVector(field, self.N, side, out)

    def _level_data(self, level: int) -> dict:
        """Per-level caches: label order, product basis, zero-mode matrices."""
        if level in self._level:
            return self._level[level]
        field = self.field
        labels = sorted(ntuples(level, self.N),
                        key=lambda l: (self._weight(l), l))
        index = {l: i for i, l in enumerate(labels)}
        kets = [self.product_state(l, "ket") for l in labels]
        bras = [self.product_state(l, "bra") for l in labels]
        T = [[kets[j].coefficient(labels[i]) for j in range(len(labels))]
             for i in range(len(labels))]
        Tinv = linalg.inverse(field, T)

        def expand(vec: FockVector) -> List[Scalar]:
            col = [vec.coefficient(l) for l in labels]
            return [sum((Tinv[i][j] * col[j] for j in range(len(col))), field.zero)
                    for i in range(len(col))]

        A = [[field.zero] * len(labels) for _ in labels]
        B = [[field.zero] * len(labels) for _ in labels]
        for j, l in enumerate(labels):
            img = self.rep.apply_X(1, 0, kets[j])
            for i, c in enumerate(expand(img)):
                A[i][j] = c.normalize()
            img_b = self.rep.apply_X(1, 0, bras[j])
            for i, c in enumerate(expand(img_b)):
                B[j][i] = c.normalize()
        self._assert_triangular(labels, A, B)
        data = {"labels": labels, "index": index, "kets": kets, "bras": bras,
                "A": A, "B": B}
        self._level[level] = data
        return data

    @staticmethod
    def _weight(lam: NTuple) -> int:
        return sum(i * sum(comp) for i, comp in enumerate(lam, start=1))

    def _assert_triangular(self, labels, A, B):
        """The zero mode must act triangularly in the star order (exact check)."""
        for j, l in enumerate(labels):
            eps = self.eigenvalue(l)
            if not A[j][j].equals(eps) or not B[j][j].equals(eps):
                raise AssertionError(f"diagonal zero-mode entry differs from eigenvalue at {l}")
            for i, m in enumerate(labels):
                if i == j:
                    continue
                if not A[i][j].is_zero() and star_compare(m, l) != "less":
                    raise AssertionError(f"non-triangular zero-mode entry {m} <- {l}")
                if not B[j][i].is_zero() and star_compare(m, l) != "greater":
                    raise AssertionError(f"non-triangular dual zero-mode entry {m} <- {l}")

    # -- generalized Macdonald vectors ------------------------------------------

    def P_state(self, lam, side: str = "ket") -> FockVector:
        """|P_lam> (or <P_lam|): unit leading coefficient on the product basis."""
        lam = mk_ntuple(lam)
        key = (side, lam)
        if key in self._P:
            return self._P[key]
        field = self.field
        level = tuple_size(lam)
        data = self._level_data(level)
        labels, index = data["labels"], data["index"]
        mat = data["A"] if side == "ket" else data["B"]
        eps_lam = self.eigenvalue(lam)
        coeffs: Dict[int, Scalar] = {index[lam]: field.one}
        j0 = index[lam]
        order = range(j0 - 1, -1, -1) if side == "ket" else range(j0 + 1, len(labels))
        want = "less" if side == "ket" else "greater"
        for i in order:
            if star_compare(labels[i], lam) != want:
                continue
            total = field.zero
            for jj, x in coeffs.items():
                entry = mat[i][jj] if side == "ket" else mat[jj][i]
                if not entry.is_zero():
                    total = total + entry * x
            if total.is_zero():
                continue
            gap = eps_lam - self.eigenvalue(labels[i])
            if gap.is_zero():
                raise ZeroDivisionError("eigenvalue collision at this specialization")
            coeffs[i] = (total / gap).normalize()
        basis = data["kets"] if side == "ket" else data["bras"]
        out = FockVector(field, self.N, side)
        for i, c in coeffs.items():
            out = out + basis[i].scale(c)
        out = out.normalized()
        self._P[key] = out
        return out

    def triangular_coefficients(self, lam, side: str = "ket") -> Dict[NTuple, Scalar]:
        """u_{lam,mu}: the product-basis coefficients of |P_lam>."""
        lam = mk_ntuple(lam)
        data = self._level_data(tuple_size(lam))
        vec = self.P_state(lam, side)
        labels = data["labels"]
        col = [vec.coefficient(l) for l in labels]
        field = self.field
        kets = data["kets"] if side == "ket" else data["bras"]
        T = [[kets[j].coefficient(labels[i]) for j in range(len(labels))] for i in range(len(labels))]
        coeffs = linalg.solve(field, T, col)
        return {l: c for l, c in zip(labels, coeffs) if not c.is_zero()}

    def Q_state(self, lam, side: str = "ket") -> FockVector:
        lam = mk_ntuple(lam)
        c = self.field.one
        for comp in lam:
            c = c * c_lambda(self.field, comp) / cprime_lambda(self.field, comp)
        return self.P_state(lam, side).scale(c)

    # -- integral forms -----------------------------------------------------------

    def xi_plus(self, lam: NTuple) -> Scalar:
        field, N, u = self.field, self.N, self.u
        out = field.one
        running = 0
        for i, comp in enumerate(lam, start=1):
            k = sum(comp)
            running += k
            if ((N - i + 1) * k) % 2:
                out = -out
            out = out * u[i - 1].pow((-N + i) * k + running)
            out = out * field.gamma.pow((i - 1) * k)
            out = out * field.q.pow((i - N) * (n_weight(conjugate(comp)) + k))
            out = out * field.t.pow((N - i - 1) * (n_weight(comp) + k))
        return out

    def xi_minus(self, lam: NTuple) -> Scalar:
        field, N, u = self.field, self.N, self.u
        out = field.one
        for i, comp in enumerate(lam, start=1):
            k = sum(comp)
            tail = sum(sum(c) for c in lam[i - 1:])
            if (i * k) % 2:
                out = -out
            out = out * u[i - 1].pow((-i + 1) * k + tail)
            out = out * field.gamma.pow(-(i - 1) * k)
            out = out * field.t.pow(k)
            out = out * field.q.pow((1 - i) * (n_weight(conjugate(comp)) + k))
            out = out * field.t.pow((i - 2) * (n_weight(comp) + k))
        return out

    def C_plus(self, lam: NTuple) -> Scalar:
        field, N, u = self.field, self.N, self.u
        out = self.xi_plus(lam)
        q, t = field.q, field.t
        for i in range(N):
            for j in range(i + 1, N):
                out = out * nekrasov(field, lam[i], lam[j], q * u[i] / (t * u[j]))
        for comp in lam:
            out = out * c_lambda(field, comp)
        return out

    def C_minus(self, lam: NTuple) -> Scalar:
        field, N, u = self.field, self.N, self.u
        out = self.xi_minus(lam)
        q, t = field.q, field.t
        for i in range(N):
            for j in range(i + 1, N):
                out = out * nekrasov(field, lam[j], lam[i], q * u[j] / (t * u[i]))
        for comp in lam:
            out = out * c_lambda(field, comp)
        return out

    def K_state(self, lam, side: str = "ket") -> FockVector:
        lam = mk_ntuple(lam)
        c = self.C_plus(lam) if side == "ket" else self.C_minus(lam)
        return self.P_state(lam, side).scale(c).normalized()

    def alpha_row(self, lam, sign: str) -> Dict[NTuple, Scalar]:
        """PBW-basis expansion of |K_lam> (sign '+') or <K_lam| (sign '-')."""
        lam = mk_ntuple(lam)
        side = "ket" if sign == "+" else "bra"
        return self.rep.pbw_expand(self.K_state(lam, side))

    def alpha_matrix(self, level: int, sign: str) -> Tuple[Tuple[NTuple, ...], List[List[Scalar]]]:
        labels = ntuples(level, self.N)
        rows = []
        for lam in labels:
            row_map = self.alpha_row(lam, sign)
            rows.append([row_map.get(mu, self.field.zero) for mu in labels])
        return labels, rows

    # -- norms and orthogonality ---------------------------------------------------

    def norm_product_formula(self, lam: NTuple) -> Scalar:
        """<K_lam|K_lam> closed form:
        ((-1)^N gamma^2 e_N(u))^|lam| prod_i (u_i^{|l^i|} gamma^{-2|l^i|} g_{l^i})^{2-N}
        prod_{i,j} N_{l^i l^j}(q u_i / t u_j)."""
        field, N, u = self.field, self.N, self.u
        k = tuple_size(lam)
        eN = field.one
        for ui in u:
            eN = eN * ui
        base = field.gamma.pow(2) * eN
        if N % 2:
            base = -base
        out = base.pow(k)
        for i, comp in enumerate(lam):
            ki = sum(comp)
            g = flaming_factors(field, comp)[1]
            out = out * (u[i].pow(ki) * field.gamma.pow(-2 * ki) * g).pow(2 - N)
        q, t = field.q, field.t
        for i in range(N):
            for j in range(N):
                out = out * nekrasov(field, lam[i], lam[j], q * u[i] / (t * u[j]))
        return out

    def norm_check(self, lam) -> bool:
        lam = mk_ntuple(lam)
        lhs = fock_pairing(self.K_state(lam, "bra"), self.K_state(lam, "ket"))
        return lhs.equals(self.norm_product_formula(lam))

    def pp_inner(self, lam, mu) -> Scalar:
        lam, mu = mk_ntuple(lam), mk_ntuple(mu)
        return fock_pairing(self.P_state(lam, "bra"), self.P_state(mu, "ket"))

    def orthogonality_check(self, level: int) -> bool:
        """<P_lam|P_mu> = delta prod c'/c across a whole level."""
        field = self.field
        for lam in ntuples(level, self.N):
            for mu in ntuples(level, self.N):
                got = self.pp_inner(lam, mu)
                if lam == mu:
                    want = field.one
                    for comp in lam:
                        want = want * cprime_lambda(field, comp) / c_lambda(field, comp)
                    if not got.equals(want):
                        return False
                elif not got.is_zero() and not got.equals(field.zero):
                    return False
        return True
