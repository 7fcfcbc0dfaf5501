"""The N-fold bosonic Fock space and its vertex-operator mode actions.

States are linear combinations of boson monomials: a ket label is an N-tuple
of partitions (mu^(1), ..., mu^(N)) standing for prod_i a^(i)_{-mu^(i)} |0>,
a bra label for the positive modes acting on <0| from the right.  The single
commutator [a_m, a_n] = m (1-q^|m|)/(1-t^|m|) delta_{m+n,0} (with a_0 acting
as 1) drives everything.

Vertex operators are kept in normal-ordered exponential form: per tensor slot
a creation coefficient sequence (A_n)_{n>=1} and an annihilation sequence
(B_n)_{n>=1}, queried lazily, plus a scalar prefactor.  The z^{-n} mode of
such an operator acts on a finite-level state by a finite contraction sum, so
no series are ever materialized.

`FockRep` bundles the generating currents X^(k)(z) for a given spectral
parameter tuple and provides PBW states, Gram matrices and the Kac
determinant machinery on top of them.
"""

from __future__ import annotations

from math import factorial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import linalg
from .partitions import NTuple, Partition, ntuples, partitions
from .scalar import Field, Scalar

__all__ = [
    "FockVector", "VertexOperatorSpec", "ModeOperatorSum", "FockRep",
    "fock_pairing", "apply_mode", "boson_norm", "kac_u_factor", "kac_check",
]

CoeffFn = Callable[[int], Scalar]


def _rho(field: Field, m: int) -> Scalar:
    """[a_m, a_{-m}] = m (1-q^m)/(1-t^m)."""
    cache = field.__dict__.setdefault("_fock_rho_cache", {})
    if m not in cache:
        cache[m] = field.int(m) * (field.one - field.q.pow(m)) / (field.one - field.t.pow(m))
    return cache[m]


class FockVector:
    """Level-graded linear combination of boson basis states (immutable-ish)."""

    __slots__ = ("field", "N", "side", "terms")

    def __init__(self, field: Field, N: int, side: str, terms: Optional[Dict[NTuple, Scalar]] = None):
        if side not in ("ket", "bra"):
            raise ValueError("side must be 'ket' or 'bra'")
        self.field = field
        self.N = N
        self.side = side
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    @classmethod
    def vacuum(cls, field: Field, N: int, side: str = "ket") -> "FockVector":
        return cls(field, N, side, {((),) * N: field.one})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "FockVector") -> "FockVector":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return FockVector(self.field, self.N, self.side, out)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + other.scale(-self.field.one)

    def scale(self, c: Scalar) -> "FockVector":
        if c.is_zero():
            return FockVector(self.field, self.N, self.side)
        return FockVector(self.field, self.N, self.side, {k: v * c for k, v in self.terms.items()})

    def normalized(self) -> "FockVector":
        return FockVector(self.field, self.N, self.side,
                          {k: v.normalize() for k, v in self.terms.items()})

    def coefficient(self, label: NTuple) -> Scalar:
        return self.terms.get(label, self.field.zero)

    def by_level(self) -> Dict[int, "FockVector"]:
        out: Dict[int, FockVector] = {}
        for k, v in self.terms.items():
            lvl = sum(sum(c) for c in k)
            out.setdefault(lvl, FockVector(self.field, self.N, self.side)).terms[k] = v
        return out

    def level(self) -> int:
        """Level of a homogeneous vector (0 for the zero vector)."""
        lvls = {sum(sum(c) for c in k) for k in self.terms}
        if len(lvls) > 1:
            raise ValueError(f"inhomogeneous vector, levels {sorted(lvls)}")
        return lvls.pop() if lvls else 0

    def _check(self, other: "FockVector"):
        if self.side != other.side or self.N != other.N or self.field is not other.field:
            raise ValueError("incompatible Fock vectors")

    def __repr__(self) -> str:
        if not self.terms:
            return "FockVector(0)"
        bits = [f"({v}) * {k}" for k, v in sorted(self.terms.items())]
        return "FockVector(" + " + ".join(bits) + ")"


def boson_norm(field: Field, label: NTuple) -> Scalar:
    """<a_label | a_label> = prod_slots z_mu prod_i (1-q^mu_i)/(1-t^mu_i)."""
    out = field.one
    for comp in label:
        mult: Dict[int, int] = {}
        for m in comp:
            mult[m] = mult.get(m, 0) + 1
        for m, j in mult.items():
            out = out * field.int(factorial(j)) * _rho(field, m).pow(j)
    return out


def fock_pairing(bra: FockVector, ket: FockVector) -> Scalar:
    """Bilinear pairing <bra|ket> with <0|0> = 1."""
    if bra.side != "bra" or ket.side != "ket":
        raise ValueError("pairing needs (bra, ket)")
    if bra.N != ket.N:
        raise ValueError("mismatched number of tensor slots")
    field = bra.field
    total = field.zero
    small, big = (bra.terms, ket.terms) if len(bra.terms) <= len(ket.terms) else (ket.terms, bra.terms)
    for label, c in small.items():
        d = big.get(label)
        if d is not None:
            total = total + c * d * boson_norm(field, label)
    return total


class _Seq:
    """Lazy sum of coefficient generators for one slot, memoized per mode."""

    __slots__ = ("parts", "cache")

    def __init__(self, parts: Tuple[CoeffFn, ...] = ()):
        self.parts = parts
        self.cache: Dict[int, Scalar] = {}

    def __call__(self, field: Field, n: int) -> Scalar:
        if n not in self.cache:
            total = field.zero
            for fn in self.parts:
                total = total + fn(n)
            self.cache[n] = total
        return self.cache[n]

    def plus(self, other: "_Seq") -> "_Seq":
        return _Seq(self.parts + other.parts)

    def is_trivial(self) -> bool:
        return not self.parts


class VertexOperatorSpec:
    """Normal-ordered exponential operator: prefactor, mode shift, and per-slot
    creation/annihilation coefficient sequences (closed-form generators)."""

    __slots__ = ("field", "N", "prefactor", "mode_shift", "creation", "annihilation", "_packets")

    def __init__(self, field: Field, N: int, prefactor: Scalar,
                 creation: Sequence[_Seq], annihilation: Sequence[_Seq], mode_shift: int = 0):
        self.field = field
        self.N = N
        self.prefactor = prefactor
        self.mode_shift = mode_shift
        self.creation = tuple(creation)
        self.annihilation = tuple(annihilation)
        self._packets: Dict[Tuple[str, int, int], list] = {}

    @classmethod
    def identity(cls, field: Field, N: int, prefactor: Optional[Scalar] = None) -> "VertexOperatorSpec":
        return cls(field, N, prefactor if prefactor is not None else field.one,
                   [_Seq() for _ in range(N)], [_Seq() for _ in range(N)])

    def compose(self, other: "VertexOperatorSpec") -> "VertexOperatorSpec":
        """Product of already-normal-ordered data: prefactors multiply and the
        coefficient sequences add (contraction scalars are NOT generated)."""
        if self.N != other.N or self.field is not other.field:
            raise ValueError("incompatible specs")
        return VertexOperatorSpec(
            self.field, self.N, self.prefactor * other.prefactor,
            [a.plus(b) for a, b in zip(self.creation, other.creation)],
            [a.plus(b) for a, b in zip(self.annihilation, other.annihilation)],
            self.mode_shift + other.mode_shift)

    def scaled(self, c: Scalar) -> "VertexOperatorSpec":
        out = VertexOperatorSpec(self.field, self.N, self.prefactor * c,
                                 self.creation, self.annihilation, self.mode_shift)
        return out

    # Packets: all ways one exponential side of one slot can emit a partition
    # worth `level` of boson modes, with the accompanying scalar factor.
    def _side_packets(self, side: str, slot: int, level: int) -> list:
        key = (side, slot, level)
        if key not in self._packets:
            seq = (self.creation if side == "cre" else self.annihilation)[slot]
            field = self.field
            out = []
            if level == 0:
                out.append(((), field.one))
            elif not seq.is_trivial():
                for nu in partitions(level):
                    factor = field.one
                    mult: Dict[int, int] = {}
                    for m in nu:
                        mult[m] = mult.get(m, 0) + 1
                    for m, c in mult.items():
                        factor = factor * seq(field, m).pow(c) / field.int(factorial(c))
                    if not factor.is_zero():
                        out.append((nu, factor))
            self._packets[key] = out
        return self._packets[key]


class ModeOperatorSum:
    """A finite sum of normal-ordered vertex operator specs (e.g. X^(k)(z))."""

    __slots__ = ("field", "N", "terms")

    def __init__(self, field: Field, N: int, terms: Sequence[VertexOperatorSpec]):
        self.field = field
        self.N = N
        self.terms = tuple(terms)


def _subset_choices(field: Field, seq: _Seq, comp: Partition, rho_fn) -> list:
    """Ways to contract some of the modes of one slot's partition `comp`
    against one exponential: (killed_level, factor, remaining_partition)."""
    mult: Dict[int, int] = {}
    for m in comp:
        mult[m] = mult.get(m, 0) + 1
    outcomes = [(0, field.one, dict(mult))]
    if seq.is_trivial():
        return [(0, field.one, comp)]
    for m, j in mult.items():
        base = seq(field, m) * rho_fn(m)
        new_outcomes = []
        powers = [field.one]
        for _ in range(j):
            powers.append(powers[-1] * base)
        for lvl, fac, rem in outcomes:
            for k in range(j + 1):
                binom = factorial(j) // (factorial(k) * factorial(j - k))
                f2 = fac * field.int(binom) * powers[k]
                if f2.is_zero() and k > 0:
                    continue
                rem2 = dict(rem)
                if k:
                    rem2[m] = j - k
                new_outcomes.append((lvl + m * k, f2, rem2))
        outcomes = new_outcomes
    final = []
    for lvl, fac, rem in outcomes:
        parts = []
        for m, c in rem.items():
            parts.extend([m] * c)
        final.append((lvl, fac, tuple(sorted(parts, reverse=True))))
    return final


def _compositions(total: int, n: int):
    if n == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, n - 1):
            yield (head,) + rest


def apply_mode(op, n: int, vec: FockVector) -> FockVector:
    """Apply the z^{-n} mode of `op` to `vec` (right action when vec is a bra).

    A ket of level L goes to level L - n; a bra of level L to level L + n.
    Out-of-range modes simply produce the zero vector.
    """
    if isinstance(op, VertexOperatorSpec):
        op = ModeOperatorSum(op.field, op.N, [op])
    field, N = op.field, op.N
    is_ket = vec.side == "ket"
    result = FockVector(field, N, vec.side)
    rho_fn = lambda m: _rho(field, m)
    for spec in op.terms:
        mode = n - spec.mode_shift
        contract_side = spec.annihilation if is_ket else spec.creation
        emit_side = "cre" if is_ket else "ann"
        for label, coeff in vec.terms.items():
            per_slot = [_subset_choices(field, contract_side[i], label[i], rho_fn) for i in range(N)]
            combos = [((), field.one, ())]
            for choices in per_slot:
                combos = [(lv + (lvl,), f * fac, rm + (rem,))
                          for lv, f, rm in combos for lvl, fac, rem in choices]
            for killed_levels, kfac, remains in combos:
                if kfac.is_zero():
                    continue
                killed = sum(killed_levels)
                emit_level = killed - mode if is_ket else killed + mode
                if emit_level < 0:
                    continue
                base = coeff * spec.prefactor * kfac
                for comp in _compositions(emit_level, N):
                    slot_opts = [spec._side_packets(emit_side, i, comp[i]) for i in range(N)]
                    stack = [(base, ())]
                    for i in range(N):
                        new_stack = []
                        for f, accum in stack:
                            for nu, pf in slot_opts[i]:
                                f2 = f * pf
                                if not f2.is_zero():
                                    new_stack.append((f2, accum + (nu,)))
                        stack = new_stack
                    for f, created in stack:
                        new_label = tuple(
                            tuple(sorted(remains[i] + created[i], reverse=True))
                            for i in range(N))
                        prev = result.terms.get(new_label)
                        result.terms[new_label] = f if prev is None else prev + f
    result.terms = {k: v for k, v in result.terms.items() if not v.is_zero()}
    return result


# ---------------------------------------------------------------------------
# Current builders
# ---------------------------------------------------------------------------

def _gamma_half_power(field: Field, half: int) -> Scalar:
    """gamma^(half/2); the exponent must come out integral."""
    if half % 2:
        raise ValueError("half-integral gamma power escaped a current combination")
    return field.gamma.pow(half // 2)


def eta_components(field: Field, arg: Scalar) -> Tuple[CoeffFn, CoeffFn]:
    """eta(arg*z): creation (1-t^{-n})/n arg^n, annihilation -(1-t^n)/n arg^{-n}."""
    t = field.t

    def cre(n: int) -> Scalar:
        return (field.one - t.pow(-n)) / field.int(n) * arg.pow(n)

    def ann(n: int) -> Scalar:
        return -(field.one - t.pow(n)) / field.int(n) * arg.pow(-n)

    return cre, ann


def xi_components(field: Field, arg: Scalar) -> Tuple[CoeffFn, CoeffFn]:
    """xi(arg*z): the conjugate current (gamma^n twists relative to eta)."""
    t, gamma = field.t, field.gamma

    def cre(n: int) -> Scalar:
        return -(field.one - t.pow(-n)) * gamma.pow(n) / field.int(n) * arg.pow(n)

    def ann(n: int) -> Scalar:
        return (field.one - t.pow(n)) * gamma.pow(n) / field.int(n) * arg.pow(-n)

    return cre, ann


def phi_minus_component(field: Field, arg: Scalar, half: int) -> CoeffFn:
    """Creation half of phi^-(gamma^(half/2) * arg * z)."""
    t, gamma = field.t, field.gamma

    def cre(n: int) -> Scalar:
        g = _gamma_half_power(field, n * (half - 1))
        return (field.one - t.pow(-n)) * (field.one - gamma.pow(2 * n)) / field.int(n) * g * arg.pow(n)

    return cre


def phi_plus_component(field: Field, arg: Scalar, half: int) -> CoeffFn:
    """Annihilation half of phi^+(gamma^(half/2) * arg * z)."""
    t, gamma = field.t, field.gamma

    def ann(n: int) -> Scalar:
        g = _gamma_half_power(field, -n * (half + 1))
        return -(field.one - t.pow(n)) * (field.one - gamma.pow(2 * n)) / field.int(n) * g * arg.pow(-n)

    return ann


def lambda_spec(field: Field, N: int, i: int, arg: Scalar) -> VertexOperatorSpec:
    """Lambda^(i)(arg*z): phi^- dressings on slots < i, eta on slot i.

    Slot j < i carries phi^-(gamma^(j-1/2) arg z); slot i carries
    eta(gamma^(i-1) arg z).  All gamma powers combine to integers.
    """
    creation = [_Seq() for _ in range(N)]
    annihilation = [_Seq() for _ in range(N)]
    for j in range(1, i):
        creation[j - 1] = _Seq((phi_minus_component(field, arg, 2 * j - 1),))
    cre, ann = eta_components(field, field.gamma.pow(i - 1) * arg)
    creation[i - 1] = _Seq((cre,))
    annihilation[i - 1] = _Seq((ann,))
    return VertexOperatorSpec(field, N, field.one, creation, annihilation)


def eta_spec(field: Field, N: int, slot: int, arg: Scalar, prefactor: Optional[Scalar] = None,
             mode_shift: int = 0) -> VertexOperatorSpec:
    creation = [_Seq() for _ in range(N)]
    annihilation = [_Seq() for _ in range(N)]
    cre, ann = eta_components(field, arg)
    creation[slot - 1] = _Seq((cre,))
    annihilation[slot - 1] = _Seq((ann,))
    return VertexOperatorSpec(field, N, prefactor if prefactor is not None else field.one,
                              creation, annihilation, mode_shift)


class FockRep:
    """The level-(N,0) module structure for a fixed spectral parameter tuple.

    Only the images of the abstract generators matter here: X^(k)(z) as sums
    of normal-ordered Lambda products, their modes on kets and bras, PBW
    states, and level Gram matrices.  All caches are per-instance.
    """

    def __init__(self, field: Field, N: int, params: Sequence[Scalar]):
        if len(params) != N:
            raise ValueError("need exactly N spectral parameters")
        self.field = field
        self.N = N
        self.u = tuple(field._coerce(p) for p in params)
        self._X: Dict[int, ModeOperatorSum] = {}
        self._pbw: Dict[Tuple[str, NTuple], FockVector] = {}
        self._gram: Dict[int, Tuple[Tuple[NTuple, ...], List[List[Scalar]]]] = {}
        self._gram_inv: Dict[int, List[List[Scalar]]] = {}
        self._solvers: Dict[Tuple[int, str], "linalg.PreparedSolve"] = {}

    # -- generating currents -------------------------------------------------

    def X(self, k: int) -> ModeOperatorSum:
        """X^(k)(z) = sum_{j_1<...<j_k} :Lambda^(j_1)(z)...Lambda^(j_k)((q/t)^(k-1) z): u_{j_1}...u_{j_k}."""
        if not 1 <= k <= self.N:
            raise ValueError(f"X^({k}) undefined for N={self.N}")
        if k not in self._X:
            field = self.field
            specs = []
            from itertools import combinations
            for subset in combinations(range(1, self.N + 1), k):
                spec = VertexOperatorSpec.identity(field, self.N)
                weight = field.one
                for m, j in enumerate(subset):
                    arg = field.gamma.pow(-2 * m)  # (q/t)^m
                    spec = spec.compose(lambda_spec(field, self.N, j, arg))
                    weight = weight * self.u[j - 1]
                specs.append(spec.scaled(weight))
            self._X[k] = ModeOperatorSum(field, self.N, specs)
        return self._X[k]

    def apply_X(self, k: int, n: int, vec: FockVector) -> FockVector:
        return apply_mode(self.X(k), n, vec)

    def vacuum(self, side: str = "ket") -> FockVector:
        return FockVector.vacuum(self.field, self.N, side)

    # -- PBW states -----------------------------------------------------------

    def pbw(self, lam: NTuple, side: str = "ket") -> FockVector:
        """|X_lam> or <X_lam| by the iterated mode actions of the definition."""
        key = (side, lam)
        if key not in self._pbw:
            vec = self.vacuum(side)
            if side == "ket":
                for k in range(self.N, 0, -1):
                    for row in reversed(lam[k - 1]):
                        vec = self.apply_X(k, -row, vec)
            else:
                for k in range(self.N, 0, -1):
                    for row in reversed(lam[k - 1]):
                        vec = self.apply_X(k, row, vec)
            self._pbw[key] = vec.normalized()
        return self._pbw[key]

    # -- Gram machinery ---------------------------------------------------------

    def basis(self, level: int) -> Tuple[NTuple, ...]:
        return ntuples(level, self.N)

    def gram(self, level: int) -> Tuple[Tuple[NTuple, ...], List[List[Scalar]]]:
        """(<X_lam | X_mu>) over the canonical label order at this level."""
        if level not in self._gram:
            labels = self.basis(level)
            bras = [self.pbw(lam, "bra") for lam in labels]
            kets = [self.pbw(lam, "ket") for lam in labels]
            mat = [[fock_pairing(b, k).normalize() for k in kets] for b in bras]
            self._gram[level] = (labels, mat)
        return self._gram[level]

    def gram_inverse(self, level: int) -> List[List[Scalar]]:
        if level not in self._gram_inv:
            _, mat = self.gram(level)
            try:
                self._gram_inv[level] = linalg.inverse(self.field, mat)
            except ZeroDivisionError:
                raise ZeroDivisionError(
                    f"PBW Gram matrix singular at level {level}: a Kac factor vanished "
                    "at this parameter specialization")
        return self._gram_inv[level]

    def _boson_solver(self, level: int, side: str) -> "linalg.PreparedSolve":
        """Prepared solve of the PBW-to-boson coefficient matrix at a level.

        Expanding in the PBW basis through this matrix is equivalent to the
        Gram-pairing route but keeps all intermediates at state-coefficient
        size instead of dragging the Kac determinant along.
        """
        key = (level, side)
        if key not in self._solvers:
            labels = self.basis(level)
            vecs = [self.pbw(lam, side) for lam in labels]
            T = [[vecs[j].coefficient(labels[i]) for j in range(len(labels))]
                 for i in range(len(labels))]
            try:
                self._solvers[key] = linalg.PreparedSolve(self.field, T)
            except ZeroDivisionError:
                raise ZeroDivisionError(
                    f"PBW basis degenerates at level {level}: "
                    + self._vanishing_kac_factor(level)) from None
        return self._solvers[key]

    def _vanishing_kac_factor(self, level: int) -> str:
        q, t = self.field.q, self.field.t
        for i, ui in enumerate(self.u, start=1):
            if ui.is_zero():
                return f"the Kac factor u{i} vanishes at this specialization"
        for r in range(1, level + 1):
            for s_ in range(1, level // r + 1):
                for i in range(self.N):
                    for j in range(self.N):
                        if i == j:
                            continue
                        if (self.u[i] - q.pow(s_) * t.pow(-r) * self.u[j]).is_zero():
                            return (f"the Kac factor (u{i+1} - q^{s_} t^-{r} u{j+1}) "
                                    "vanishes at this specialization")
        return "a Kac factor vanished at this parameter specialization"

    def pbw_expand(self, vec: FockVector) -> Dict[NTuple, Scalar]:
        """Coefficients of a (possibly inhomogeneous) vector in the PBW basis."""
        out: Dict[NTuple, Scalar] = {}
        for level, part in vec.by_level().items():
            labels = self.basis(level)
            solver = self._boson_solver(level, part.side)
            b = [part.coefficient(lam) for lam in labels]
            coeffs = solver.solve(b)
            for lam, c in zip(labels, coeffs):
                if not c.is_zero():
                    out[lam] = c
        return out

    def kac_determinant(self, level: int, factored: bool = True) -> Scalar:
        """det of the level Gram matrix, exact.

        The Gram matrix factors through the boson basis as A^T diag(norms) B
        (A, B the bra/ket PBW coefficient matrices), so its determinant is
        det(A) det(B) prod(norms); the coefficient matrices have far smaller
        entries than the Gram pairings, which keeps Bareiss tractable at the
        10-dimensional level-3 block.  `factored=False` forces the direct
        elimination on the pairing matrix (used as a cross-check in tests).
        """
        if not factored:
            _, mat = self.gram(level)
            return linalg.det(self.field, mat)
        labels = self.basis(level)
        bra_mat = [[self.pbw(lam, "bra").coefficient(b) for lam in labels]
                   for b in labels]
        ket_mat = [[self.pbw(lam, "ket").coefficient(b) for lam in labels]
                   for b in labels]
        out = linalg.det(self.field, bra_mat) * linalg.det(self.field, ket_mat)
        for b in labels:
            out = out * boson_norm(self.field, b)
        return out


# ---------------------------------------------------------------------------
# Kac determinant verification (u-homogeneous interpolation for big blocks)
# ---------------------------------------------------------------------------

def _pbw_u_degree(lam: NTuple) -> int:
    """u-degree of |X_lam>: each X^(k) mode carries a u-monomial of degree k."""
    return sum(k * len(comp) for k, comp in enumerate(lam, start=1))


def kac_u_factor_list(field: Field, N: int, level: int, u: Sequence[Scalar]):
    """The u-dependent Kac product as a factor list [(Scalar factor, exponent)]."""
    q, t = field.q, field.t
    out = []
    for r in range(1, level + 1):
        for s_ in range(1, level // r + 1):
            exp = len(ntuples(level - r * s_, N))
            for ui in u:
                out.append((ui, 2 * exp))
            for i in range(N):
                for j in range(i + 1, N):
                    out.append((u[i] - q.pow(s_) * t.pow(-r) * u[j], exp))
                    out.append((u[i] - q.pow(-r) * t.pow(s_) * u[j], exp))
    return out


def kac_u_factor(field: Field, N: int, level: int, u: Sequence[Scalar]) -> Scalar:
    """The u-dependent product of the Kac determinant formula:
    prod_{rs<=n} ((u_1...u_N)^2 prod_{i<j} (u_i - q^s t^-r u_j)(u_i - q^-r t^s u_j))^(P^(N)(n-rs))."""
    out = field.one
    for factor, exp in kac_u_factor_list(field, N, level, u):
        out = out * factor.pow(exp)
    return out


def _b_products(field: Field, N: int, level: int) -> Scalar:
    """prod_{lam tuple of size n} prod_k b_{lam^(k)}(q) b'_{lam^(k)}(t^{-1})."""
    q, tinv = field.q, field.t.inverse()
    out = field.one
    for lam in ntuples(level, N):
        for comp in lam:
            mult: Dict[int, int] = {}
            for x in comp:
                mult[x] = mult.get(x, 0) + 1
            for m in mult.values():
                for k in range(1, m + 1):
                    out = out * (field.one - q.pow(k))
                    out = out * (tinv.pow(k) - field.one)
    return out


def kac_check(N: int, level: int) -> dict:
    """Verify the Kac determinant factorization at (N, level).

    Returns a report with the measured u-free prefactor g_{N,n}.  For N = 1
    the full closed form (b-products times the u power) is checked; for N = 2
    the symbolic determinant (via the boson factorization) is divided by the
    claimed u-dependent product and the quotient is checked to be u-free.
    """
    labels = ntuples(level, N)
    D = 2 * sum(_pbw_u_degree(lam) for lam in labels)
    report = {"N": N, "level": level, "dimension": len(labels), "u_degree": D}

    if N == 1:
        base = Field(["p", "s"])
        rep = FockRep(base, 1, (base.one,))
        det1 = rep.kac_determinant(level)
        expected = _b_products(base, 1, level)
        report["g"] = str(det1.normalize())
        report["full_formula_ok"] = det1.equals(expected)
        # u-degree read off the closed form: 2 sum of lengths
        report["u_exponent_ok"] = D == 2 * sum(len(lam[0]) for lam in labels)
        return report

    if N != 2:
        raise NotImplementedError("kac_check covers N in {1, 2}")

    if len(labels) <= 6:
        field = Field(["p", "s", "u1", "u2"])
        rep = FockRep(field, 2, field.u(2))
        det_sym = rep.kac_determinant(level)
        claimed = kac_u_factor(field, 2, level, field.u(2))
        quotient = (det_sym / claimed).normalize()
        iu1 = field.symbols.index("u1")
        iu2 = field.symbols.index("u2")
        u_free = all(m[iu1] == 0 and m[iu2] == 0 for m, _ in quotient.num.iterterms()) and \
                 all(m[iu1] == 0 and m[iu2] == 0 for m, _ in quotient.den.iterterms())
        report["u_factor_ok"] = u_free
        report["g"] = str(quotient) if u_free else "(not u-free)"
        return report

    # Big block: every PBW coefficient is u-homogeneous (mode of X^(k) carries
    # u-degree k), so det of each coefficient matrix is u2^d h(u1/u2) with
    # d = sum of the state u-degrees; h is reconstructed exactly by Lagrange
    # interpolation from d+1 rational specializations, and the u-freeness of
    # det/claimed becomes an exact division check in r = u1/u2.
    d_side = sum(_pbw_u_degree(lam) for lam in labels)
    fr = Field(["p", "s", "r"])
    r = fr.sym("r")
    base = Field(["p", "s"])
    field_u = Field(["p", "s", "u1", "u2"])
    rep_u = FockRep(field_u, 2, field_u.u(2))
    hs = {}
    nodes = list(range(1, d_side + 2))
    for side in ("bra", "ket"):
        sym_mat = [[rep_u.pbw(lam, side).coefficient(b) for lam in labels]
                   for b in labels]
        dets = []
        for node in nodes:
            mat = [[base.convert(x, {"u1": base.int(node), "u2": base.one})
                    for x in row] for row in sym_mat]
            dets.append(linalg.det(base, mat))
        # the entry denominators are u-free, so every node shares one
        # denominator: interpolate the polynomial numerators only
        den0 = dets[0].den
        if all(d.den == den0 for d in dets):
            nums = [Scalar(fr, fr.convert(Scalar(base, d.num, base._one)).num, fr._one)
                    for d in dets]
            h_num = _lagrange(fr, "r", nodes, nums)
            hs[side] = h_num / fr.convert(Scalar(base, den0, base._one))
        else:
            hs[side] = _lagrange(fr, "r", nodes, [fr.convert(d) for d in dets])
    # Divisibility check, factor by factor: the claimed product is a product
    # of r-linear factors, so trial division against the two determinant
    # numerators decides u-freeness without ever expanding h_bra * h_ket.
    norms = fr.one
    for b in labels:
        norms = norms * fr.convert(boson_norm(base, b))
    r_idx = fr.symbols.index("r")
    num_parts = [hs["bra"].normalize(), hs["ket"].normalize()]
    polys = [x.num for x in num_parts]
    extra_num = fr._one   # monomial corrections from clearing factor denominators
    u_free = True
    for factor, exp in kac_u_factor_list(fr, 2, level, (r, fr.one)):
        fac = factor.normalize()
        remaining = exp
        for k in range(len(polys)):
            while remaining:
                quot, rem = divmod(polys[k], fac.num)
                if rem:
                    break
                polys[k] = quot
                extra_num = extra_num * fac.den
                remaining -= 1
        if remaining:
            u_free = False
            break
    if u_free:
        for poly in polys:
            if any(m[r_idx] for m, _ in poly.iterterms()):
                u_free = False
    report["u_factor_ok"] = u_free
    if u_free:
        g = Scalar(fr, polys[0] * polys[1] * extra_num, fr._one)
        g = g * norms / (Scalar(fr, num_parts[0].den, fr._one)
                         * Scalar(fr, num_parts[1].den, fr._one))
        report["g"] = str(g)
    else:
        report["g"] = "(not u-free)"
    return report


def _lagrange(field: Field, var: str, nodes: Sequence[int], values: Sequence[Scalar]) -> Scalar:
    """Exact Lagrange interpolation through integer nodes.

    The master node polynomial is divided synthetically per node, so each
    term costs one polynomial multiplication instead of a chain of them.
    """
    idx = field.symbols.index(var)
    nvars = len(field.symbols)
    master = [1]
    for xj in nodes:
        master = [ (master[i - 1] if i else 0) - xj * c
                   for i, c in enumerate(master) ] + [master[-1]]
    total = field.zero
    for i, (xi, yi) in enumerate(zip(nodes, values)):
        # synthetic division of the master polynomial by (X - xi)
        quot = [0] * (len(master) - 1)
        carry = master[-1]
        for k in range(len(master) - 2, -1, -1):
            quot[k] = carry
            carry = master[k] + xi * carry
        denom = 1
        for j, xj in enumerate(nodes):
            if j != i:
                denom *= (xi - xj)
        terms = {}
        for k, c in enumerate(quot):
            if c:
                monom = tuple(k if v == idx else 0 for v in range(nvars))
                terms[monom] = c
        qpoly = Scalar(field, field.ring.from_dict(terms), field._one)
        total = total + yi * qpoly / field.int(denom)
    return total


def _proportional_free_of(field: Field, h: Scalar, F: Scalar, var: str):
    """Decide h = g * F with g free of `var`, gcd-free.

    The candidate g is read off the top var-coefficient and certified by one
    cross-multiplied polynomial equality.
    """
    idx = field.symbols.index(var)
    P = h.num * F.den
    Q = F.num * h.den
    top = max(m[idx] for m, _ in Q.iterterms())

    def coeff_at(poly, e):
        terms = {}
        for monom, c in poly.iterterms():
            if monom[idx] == e:
                key = tuple(0 if i == idx else x for i, x in enumerate(monom))
                terms[key] = terms.get(key, 0) + c
        return poly.ring.from_dict(terms)

    Pm = coeff_at(P, top)
    Qm = coeff_at(Q, top)
    if not Pm or not Qm:
        return False, field.zero
    g = Scalar(field, Pm, Qm).normalize()
    ok = P * g.den == Q * g.num
    return ok, g
