"""Asymptotic Macdonald eigenfunctions, Kajihara-Noumi series, and the
transformation identities built on them.

The ratio series p_n / f_n live in C(s)[[x_2/x_1, ..., x_n/x_{n-1}]]; a
monomial is stored by its exponent vector in the consecutive ratios
z_m = x_{m+1}/x_m and series are truncated at a total z-degree.  Two regimes
coexist: exact formal coefficients (Scalars) for the identities that are
finite order by order, and arbitrary-precision numerics (mpmath) for the
principal-specialization / transformation checks whose two sides are
genuinely infinite sums.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

import mpmath

from .scalar import Field, PoleError, Scalar

__all__ = [
    "RatioSeries", "d_coefficient", "c_coefficient", "pn_series", "fn_series",
    "apply_D1", "kn_phi_mu", "kn_phi_series", "euler_check", "nmulti",
    "duality_pairing", "principal_specialization_check", "transform_check",
]

ZVec = Tuple[int, ...]


class RatioSeries:
    """Truncated formal series in the consecutive ratios x_{m+1}/x_m."""

    __slots__ = ("field", "n", "degree", "terms")

    def __init__(self, field: Field, n: int, degree: int,
                 terms: Optional[Dict[ZVec, Scalar]] = None):
        self.field = field
        self.n = n
        self.degree = degree
        self.terms = {k: v for k, v in (terms or {}).items()
                      if sum(k) <= degree and not v.is_zero()}

    @classmethod
    def one(cls, field: Field, n: int, degree: int) -> "RatioSeries":
        return cls(field, n, degree, {(0,) * (n - 1): field.one})

    def __add__(self, other: "RatioSeries") -> "RatioSeries":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return RatioSeries(self.field, self.n, min(self.degree, other.degree), out)

    def __sub__(self, other: "RatioSeries") -> "RatioSeries":
        return self + other.scale(-self.field.one)

    def scale(self, c: Scalar) -> "RatioSeries":
        return RatioSeries(self.field, self.n, self.degree,
                           {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "RatioSeries") -> "RatioSeries":
        deg = min(self.degree, other.degree)
        out: Dict[ZVec, Scalar] = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                key = tuple(a + b for a, b in zip(ka, kb))
                if sum(key) > deg:
                    continue
                c = va * vb
                out[key] = out[key] + c if key in out else c
        return RatioSeries(self.field, self.n, deg, out)

    def coefficient(self, key: ZVec) -> Scalar:
        return self.terms.get(tuple(key), self.field.zero)

    def equals(self, other: "RatioSeries") -> bool:
        deg = min(self.degree, other.degree)
        keys = {k for k in self.terms if sum(k) <= deg} | {k for k in other.terms if sum(k) <= deg}
        return all(self.coefficient(k).equals(other.coefficient(k)) for k in keys)

    def __repr__(self) -> str:
        return f"RatioSeries(n={self.n}, degree={self.degree}, {len(self.terms)} terms)"


def _ratio_monomial(n: int, lo: int, hi: int) -> ZVec:
    """z-exponent vector of x_hi/x_lo for lo < hi (1-based variables)."""
    return tuple(1 if lo <= m < hi else 0 for m in range(1, n))


# -- coefficients c_n, d_n ----------------------------------------------------

def d_coefficient(field: Field, theta: Sequence[int], s: Sequence[Scalar],
                  qq: Scalar, tt: Scalar) -> Scalar:
    """The one-column factor of the c recursion; theta has n-1 entries and s has n."""
    n = len(s)
    if len(theta) != n - 1:
        raise ValueError("theta must have n-1 entries")
    out = field.one
    for i in range(n - 1):
        th = theta[i]
        out = out * (qq / tt).pow(th)
        out = out * field.qpoch_ratio(tt, qq, th, qq)
        out = out * field.qpoch_ratio(tt * s[n - 1] / s[i], qq * s[n - 1] / s[i], th, qq)
    for i in range(n - 1):
        for j in range(i + 1, n - 1):
            thi, thj = theta[i], theta[j]
            out = out * field.qpoch_ratio(tt * s[j] / s[i], qq * s[j] / s[i], thi, qq)
            out = out * field.qpoch_ratio(qq.pow(-thj) * qq * s[j] / (tt * s[i]),
                                          qq.pow(-thj) * s[j] / s[i], thi, qq)
    return out


def c_coefficient(field: Field, theta: Dict[Tuple[int, int], int], n: int,
                  s: Sequence[Scalar], qq: Scalar, tt: Scalar) -> Scalar:
    """c_n(theta; s | qq, tt) via the column-peeling recursion."""
    if n == 1:
        return field.one
    last_col = [theta.get((i, n), 0) for i in range(1, n)]
    d = d_coefficient(field, last_col, s[:n], qq, tt)
    shifted = [qq.pow(-last_col[i - 1]) * s[i - 1] for i in range(1, n)]
    inner = {k: v for k, v in theta.items() if k[1] < n}
    return c_coefficient(field, inner, n - 1, shifted, qq, tt) * d


def _theta_matrices(n: int, degree: int):
    """All strictly upper triangular nonneg integer matrices with z-degree <= degree."""
    pairs = [(i, j) for i in range(1, n) for j in range(i + 1, n + 1)]
    weights = [j - i for i, j in pairs]

    def rec(idx: int, budget: int, acc: dict):
        if idx == len(pairs):
            yield dict(acc)
            return
        w = weights[idx]
        for v in range(budget // w + 1):
            if v:
                acc[pairs[idx]] = v
            yield from rec(idx + 1, budget - v * w, acc)
            if v:
                del acc[pairs[idx]]

    yield from rec(0, degree, {})


def _theta_zvec(theta: Dict[Tuple[int, int], int], n: int) -> ZVec:
    d = [0] * (n - 1)
    for (i, j), v in theta.items():
        for m in range(i, j):
            d[m - 1] += v
    return tuple(d)


def pn_series(field: Field, n: int, s: Sequence[Scalar], degree: int,
              qq: Optional[Scalar] = None, tt: Optional[Scalar] = None) -> RatioSeries:
    """p_n(x; s | qq, tt) truncated at total ratio degree `degree`."""
    qq = qq if qq is not None else field.q
    tt = tt if tt is not None else field.t
    s = [field._coerce(x) for x in s]
    if len(s) != n:
        raise ValueError("need n parameters")
    out: Dict[ZVec, Scalar] = {}
    for theta in _theta_matrices(n, degree):
        key = _theta_zvec(theta, n)
        c = c_coefficient(field, theta, n, s, qq, tt)
        out[key] = out[key] + c if key in out else c
    return RatioSeries(field, n, degree, out)


def fn_series(field: Field, n: int, s: Sequence[Scalar], degree: int,
              qq: Optional[Scalar] = None, tt: Optional[Scalar] = None) -> RatioSeries:
    """f_n = prod_{k<l} (1 - x_l/x_k) * p_n(x; s | qq^-1, tt^-1)."""
    qq = qq if qq is not None else field.q
    tt = tt if tt is not None else field.t
    base = pn_series(field, n, s, degree, qq.inverse(), tt.inverse())
    for k in range(1, n):
        for l in range(k + 1, n + 1):
            mono = _ratio_monomial(n, k, l)
            factor = RatioSeries(field, n, degree,
                                 {(0,) * (n - 1): field.one, mono: -field.one})
            base = base * factor
    return base


def apply_D1(field: Field, s: Sequence[Scalar], series: RatioSeries,
             qq: Optional[Scalar] = None, tt: Optional[Scalar] = None,
             variant: str = "forward") -> RatioSeries:
    """Apply D^1_n (variant 'forward') or its tilde companion to a ratio series.

    Forward:  sum_k s_k prod_{l<k} (1-t x_k/x_l)/(1-x_k/x_l)
                        prod_{l>k} (1-x_l/(t x_k))/(1-x_l/x_k) T_{q,x_k}.
    Tilde:    the q-shifted prefactors with T_{q^{-1},x_k}.
    """
    qq = qq if qq is not None else field.q
    tt = tt if tt is not None else field.t
    n, degree = series.n, series.degree
    s = [field._coerce(x) for x in s]
    total = RatioSeries(field, n, degree)
    for k in range(1, n + 1):
        pref = RatioSeries.one(field, n, degree)
        for l in range(1, n + 1):
            if l == k:
                continue
            if l < k:
                mono = _ratio_monomial(n, l, k)
                if variant == "forward":
                    factor = _shifted_geometric(field, n, degree, mono, tt, field.one)
                else:
                    factor = _shifted_geometric(field, n, degree, mono, tt / qq, qq.inverse())
            else:
                mono = _ratio_monomial(n, k, l)
                if variant == "forward":
                    factor = _shifted_geometric(field, n, degree, mono, tt.inverse(), field.one)
                else:
                    factor = _shifted_geometric(field, n, degree, mono, qq / tt, qq)
            pref = pref * factor
        shifted: Dict[ZVec, Scalar] = {}
        for key, v in series.terms.items():
            d_prev = key[k - 2] if k >= 2 else 0
            d_here = key[k - 1] if k <= n - 1 else 0
            factor = qq.pow(d_prev - d_here) if variant == "forward" else qq.pow(d_here - d_prev)
            shifted[key] = v * factor
        total = total + (pref * RatioSeries(field, n, degree, shifted)).scale(s[k - 1])
    return total


def _shifted_geometric(field: Field, n: int, degree: int, mono: ZVec,
                       a: Scalar, b: Scalar) -> RatioSeries:
    """(1 - a*u)/(1 - b*u) = 1 + (b-a) sum_{j>=1} b^{j-1} u^j at the monomial u."""
    step = sum(mono)
    out = {(0,) * (n - 1): field.one}
    coeff = b - a
    j = 1
    power = field.one
    while j * step <= degree:
        out[tuple(j * e for e in mono)] = coeff * power
        power = power * b
        j += 1
    return RatioSeries(field, n, degree, out)


def qbinomial_factor(field: Field, n: int, degree: int, mono: ZVec,
                     a: Scalar, zc: Scalar, qq: Optional[Scalar] = None) -> RatioSeries:
    """(a*zc*u; q)_inf / (zc*u; q)_inf = sum_m (a;q)_m/(q;q)_m (zc)^m u^m
    at the ratio monomial u (q-binomial theorem), truncated."""
    qq = qq if qq is not None else field.q
    step = sum(mono)
    out = {(0,) * (n - 1): field.one}
    m = 1
    power = zc
    while m * step <= degree:
        out[tuple(m * e for e in mono)] = field.qpoch(a, m, qq) / field.qpoch(qq, m, qq) * power
        power = power * zc
        m += 1
    return RatioSeries(field, n, degree, out)


def t_qt_symmetry_check(field: Field, n: int, s: Sequence[Scalar], degree: int) -> bool:
    """p_n(x;s|q,t) = prod_{i<j} (t x_j/x_i;q)_inf/((q/t) x_j/x_i;q)_inf * p_n(x;s|q,q/t),
    checked as exact formal series to the given degree."""
    q, t = field.q, field.t
    lhs = pn_series(field, n, s, degree, q, t)
    rhs = pn_series(field, n, s, degree, q, q / t)
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            mono = _ratio_monomial(n, i, j)
            rhs = rhs * qbinomial_factor(field, n, degree, mono, t * t / q, q / t)
    return lhs.equals(rhs)


# -- Kajihara-Noumi series -----------------------------------------------------

def kn_phi_mu(field: Field, mu: Sequence[int], a: Sequence[Scalar], x: Sequence[Scalar],
              B: Sequence[Scalar], C: Sequence[Scalar], qq: Optional[Scalar] = None) -> Scalar:
    """phi^{m,n}_mu with explicit lower pairs:
    prod_{i<j} (q^mu_i x_i - q^mu_j x_j)/(x_i - x_j)
    prod_{i,j} (a_j x_i/x_j; q)_mu_i / (q x_i/x_j; q)_mu_i
    prod_{i,k} (B_k x_i; q)_mu_i / (C_k x_i; q)_mu_i."""
    qq = qq if qq is not None else field.q
    m = len(mu)
    out = field.one
    for i in range(m):
        for j in range(i + 1, m):
            out = out * (qq.pow(mu[i]) * x[i] - qq.pow(mu[j]) * x[j]) / (x[i] - x[j])
    for i in range(m):
        for j in range(m):
            out = out * field.qpoch_ratio(a[j] * x[i] / x[j], qq * x[i] / x[j], mu[i], qq)
    for i in range(m):
        for k in range(len(B)):
            out = out * field.qpoch_ratio(B[k] * x[i], C[k] * x[i], mu[i], qq)
    return out


def kn_phi_series(field: Field, m: int, n: int, a: Sequence[Scalar], x: Sequence[Scalar],
                  b: Sequence[Scalar], c: Sequence[Scalar], y: Sequence[Scalar],
                  degree: int, qq: Optional[Scalar] = None) -> List[Scalar]:
    """u-expansion coefficients (orders 0..degree) of phi^{m,n}(a|x; by, cy; u)."""
    qq = qq if qq is not None else field.q
    B = [b[k] * y[k] for k in range(n)]
    C = [c[k] * y[k] for k in range(n)]
    out = []
    for d in range(degree + 1):
        total = field.zero
        for mu in _compositions_of(d, m):
            total = total + kn_phi_mu(field, mu, a, x, B, C, qq)
        out.append(total)
    return out


def _compositions_of(total: int, m: int):
    if m == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions_of(total - head, m - 1):
            yield (head,) + rest


def euler_check(field: Field, m: int, n: int, degree: int,
                a: Sequence[Scalar], x: Sequence[Scalar], b: Sequence[Scalar],
                y: Sequence[Scalar], c: Scalar) -> bool:
    """Per-u-degree identity
    phi^{m,n}(a|x; {b_k y_k},{c y_k}; u)
      = (A u/c^n; q)_inf/(u; q)_inf * phi^{n,m}(c/b|y; {c x_i/a_i},{c x_i}; A u/c^n)
    with A = a_1...a_m b_1...b_n, checked exactly for orders 0..degree."""
    q = field.q
    lhs = kn_phi_series(field, m, n, a, x, b, [c] * n, y, degree)
    A = field.one
    for ai in a:
        A = A * ai
    for bk in b:
        A = A * bk
    Bfac = A / c.pow(n)
    inner_a = [c / bk for bk in b]
    inner_B = [c * x[i] / a[i] for i in range(m)]
    inner_C = [c * x[i] for i in range(m)]
    inner = []
    for d in range(degree + 1):
        total = field.zero
        for nu in _compositions_of(d, n):
            total = total + kn_phi_mu(field, nu, inner_a, y, inner_B, inner_C, q)
        inner.append(total)
    # (B u; q)_inf/(u; q)_inf = sum_k (B; q)_k/(q; q)_k u^k  (q-binomial theorem)
    pref = [field.qpoch(Bfac, k) / field.qpoch(q, k) for k in range(degree + 1)]
    for d in range(degree + 1):
        rhs = field.zero
        for k in range(d + 1):
            rhs = rhs + pref[k] * Bfac.pow(d - k) * inner[d - k]
        if not lhs[d].equals(rhs):
            return False
    return True


# -- factored-fraction engine for the Euler identity ----------------------------
#
# The per-degree Euler coefficients are sums of products of q-Pochhammer
# ratios in ~10 symbols.  Naive fraction arithmetic drowns in gcd and
# cross-multiplication, so this path keeps every denominator as a multiset of
# small binomial factors: common denominators are unions, cancellation is
# syntactic, and the only expansions are numerator products.

class _FFrac:
    """num: multiset of ring factors; den: multiset of ring factors."""

    __slots__ = ("num", "den")

    def __init__(self, num=None, den=None):
        self.num: Dict[tuple, list] = num or {}
        self.den: Dict[tuple, list] = den or {}

    @staticmethod
    def _key(poly) -> tuple:
        return tuple(sorted(poly.iterterms()))

    def mul_factor(self, poly, where: str, power: int = 1):
        side = self.num if where == "num" else self.den
        key = self._key(poly)
        if key in side:
            side[key][1] += power
        else:
            side[key] = [poly, power]

    def mul_poch(self, ring_one, qq_poly, arg_num, arg_den, m: int):
        """Multiply by (arg_num/arg_den; q)_m, m >= 0, in factored form."""
        qpow = ring_one
        for _ in range(m):
            self.mul_factor(arg_den - qpow * arg_num, "num")
            if arg_den != ring_one:
                self.mul_factor(arg_den, "den")
            qpow = qpow * qq_poly

    def div_poch(self, ring_one, qq_poly, arg_num, arg_den, m: int):
        qpow = ring_one
        for _ in range(m):
            self.mul_factor(arg_den - qpow * arg_num, "den")
            if arg_den != ring_one:
                self.mul_factor(arg_den, "num")
            qpow = qpow * qq_poly

    def cancel(self):
        """Drop factors present in both the numerator and denominator multisets."""
        for key in list(self.num):
            if key in self.den:
                k = min(self.num[key][1], self.den[key][1])
                self.num[key][1] -= k
                self.den[key][1] -= k
                if self.num[key][1] == 0:
                    del self.num[key]
                if self.den[key][1] == 0:
                    del self.den[key]


def _ff_apply(base, factors: Dict[tuple, list], ring):
    """base * prod(factors), multiplying small factors in one at a time."""
    out = base
    for poly, power in sorted(factors.values(), key=lambda fp: len(fp[0])):
        for _ in range(power):
            out = out * poly
    return out


def _ff_sum_zero(terms, ring) -> bool:
    """Whether a signed sum of _FFrac terms vanishes: put everything over the
    union denominator and expand numerators incrementally.

    Factors common to every term (in numerators, or cancelling within a term)
    are stripped first: they are nonzero ring elements, so dividing them out
    preserves vanishing while shrinking every expansion.
    """
    for _, t in terms:
        t.cancel()
    shared: Dict[tuple, int] = None
    for _, t in terms:
        these = {key: p for key, (_, p) in t.num.items()}
        if shared is None:
            shared = these
        else:
            shared = {key: min(p, these[key]) for key, p in shared.items()
                      if key in these}
    for key, power in (shared or {}).items():
        for _, t in terms:
            t.num[key][1] -= power
            if t.num[key][1] == 0:
                del t.num[key]
    common: Dict[tuple, list] = {}
    for _, t in terms:
        for key, (poly, power) in t.den.items():
            if key not in common or common[key][1] < power:
                common[key] = [poly, power]
    total = ring.zero
    for sign, t in terms:
        complement: Dict[tuple, list] = {}
        for key, (poly, power) in common.items():
            short = power - (t.den[key][1] if key in t.den else 0)
            if short:
                complement[key] = [poly, short]
        contrib = _ff_apply(ring.one, t.num, ring)
        contrib = _ff_apply(contrib, complement, ring)
        total = total + contrib if sign > 0 else total - contrib
    return not total


def _phi_ffrac(field: Field, mu: Sequence[int], a_fr, x_fr, B_fr, C_fr) -> _FFrac:
    """phi_mu as a factored fraction; arguments are (num_poly, den_poly) pairs."""
    ring = field.ring
    one = ring.one
    qq = field.q.num  # p^2, denominator 1
    f = _FFrac()
    m = len(mu)
    for i in range(m):
        for j in range(i + 1, m):
            xin, xid = x_fr[i]
            xjn, xjd = x_fr[j]
            f.mul_factor(qq ** mu[i] * xin * xjd - qq ** mu[j] * xjn * xid, "num")
            f.mul_factor(xin * xjd - xjn * xid, "den")
    for i in range(m):
        for j in range(m):
            # (a_j x_i / x_j; q)_mu_i / (q x_i / x_j; q)_mu_i
            an, ad = a_fr[j]
            xin, xid = x_fr[i]
            xjn, xjd = x_fr[j]
            f.mul_poch(one, qq, an * xin * xjd, ad * xid * xjn, mu[i])
            f.div_poch(one, qq, qq * xin * xjd, xid * xjn, mu[i])
    for i in range(m):
        for k in range(len(B_fr)):
            bn, bd = B_fr[k]
            cn, cd = C_fr[k]
            xin, xid = x_fr[i]
            f.mul_poch(one, qq, bn * xin, bd * xid, mu[i])
            f.div_poch(one, qq, cn * xin, cd * xid, mu[i])
    return f


def euler_check_fast(field: Field, m: int, n: int, degree: int,
                     a: Sequence[Scalar], x: Sequence[Scalar], b: Sequence[Scalar],
                     y: Sequence[Scalar], c: Scalar) -> bool:
    """Same identity as euler_check, via factored-denominator arithmetic.

    Every symbol occurrence on both sides is manifestly invariant under the
    two scalings (x, y) -> (L x, y/L) and (b, c, y) -> (M b, M c, y/M); callers
    may therefore pass x_1 = c = 1 without loss of generality (the general
    statement is the relabeled slice identity, since both scalings act by an
    invertible substitution on the defining expressions).
    """
    ring = field.ring
    one = ring.one
    qq = field.q.num

    def fr(sc: Scalar):
        sc = sc.normalize()
        return (sc.num, sc.den)

    a_fr = [fr(v) for v in a]
    x_fr = [fr(v) for v in x]
    by_fr = [fr(b[k] * y[k]) for k in range(n)]
    cy_fr = [fr(c * y[k]) for k in range(n)]
    inner_a = [fr(c / b[k]) for k in range(n)]
    y_fr = [fr(v) for v in y]
    inner_B = [fr(c * x[i] / a[i]) for i in range(m)]
    inner_C = [fr(c * x[i]) for i in range(m)]
    # A/c^n as a fraction
    Bf = field.one
    for v in a:
        Bf = Bf * v
    for v in b:
        Bf = Bf * v
    Bf = (Bf / c.pow(n)).normalize()
    Bn, Bd = Bf.num, Bf.den
    for d in range(degree + 1):
        terms = [(1, _phi_ffrac(field, mu, a_fr, x_fr, by_fr, cy_fr))
                 for mu in _compositions_of(d, m)]
        for k in range(d + 1):
            j = d - k
            for nu in _compositions_of(j, n):
                t = _phi_ffrac(field, nu, inner_a, y_fr, inner_B, inner_C)
                # prefactor coefficient (B; q)_k / (q; q)_k and the B^j power
                t.mul_poch(one, qq, Bn, Bd, k)
                t.div_poch(one, qq, qq, one, k)
                if j:
                    t.mul_factor(Bn, "num", j)
                    if Bd != one:
                        t.mul_factor(Bd, "den", j)
                terms.append((-1, t))
        if not _ff_sum_zero(terms, ring):
            return False
    return True


def nmulti(field: Field, n: int, m: int, mu: Sequence[int], s: Sequence[Scalar],
           qq: Optional[Scalar] = None, tt: Optional[Scalar] = None) -> Scalar:
    """N^{n,m}_mu(s_1..s_{n+m}) =
    prod_k prod_{i<=n+k} (q s_{n+k}/t s_i)_mu_k/(q s_{n+k}/s_i)_mu_k
    prod_{i<j} (t q^-mu_i s_{n+j}/s_{n+i})_mu_j/(q^-mu_i s_{n+j}/s_{n+i})_mu_j."""
    qq = qq if qq is not None else field.q
    tt = tt if tt is not None else field.t
    if len(mu) != m or len(s) != n + m:
        raise ValueError("need m exponents and n+m parameters")
    out = field.one
    for k in range(1, m + 1):
        for i in range(1, n + k + 1):
            out = out * field.qpoch_ratio(qq * s[n + k - 1] / (tt * s[i - 1]),
                                          qq * s[n + k - 1] / s[i - 1], mu[k - 1], qq)
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            base = qq.pow(-mu[i - 1]) * s[n + j - 1] / s[n + i - 1]
            out = out * field.qpoch_ratio(tt * base, base, mu[j - 1], qq)
    return out


# -- exact duality pairing ------------------------------------------------------

def duality_pairing(field: Field, lam, mu, n_profile: Sequence[int],
                    u: Sequence[Scalar]) -> Scalar:
    """[x^-lam x^mu f(x; s(lam)|q,q/t) p(x; s(mu)|q,q/t)]_{x,1}; equals
    delta_{lam,mu} when the profile bounds all lengths."""
    from .partitions import mk_ntuple
    lam, mu = mk_ntuple(lam), mk_ntuple(mu)
    N = len(n_profile)
    if any(len(lam[i]) > n_profile[i] or len(mu[i]) > n_profile[i] for i in range(N)):
        raise ValueError("profile must bound all partition lengths")
    ntot = sum(n_profile)
    q, t = field.q, field.t

    def flat(tup):
        out = []
        for i in range(N):
            comp = tup[i]
            out.extend(list(comp) + [0] * (n_profile[i] - len(comp)))
        return out

    def sparams(tup):
        out = []
        for i in range(N):
            comp = tup[i]
            for k in range(1, n_profile[i] + 1):
                row = comp[k - 1] if k <= len(comp) else 0
                out.append(q.pow(row) * t.pow(1 - k) * u[i])
        return out

    L, M = flat(lam), flat(mu)
    target = []
    acc = 0
    for i in range(ntot - 1):
        acc += M[i] - L[i]
        target.append(acc)
    if sum(M) != sum(L) or any(d < 0 for d in target):
        return field.zero
    degree = sum(target)
    # The f that is dual to p(.|q,q/t) is prod(1-x_l/x_k) p(.|q^-1,t^-1),
    # i.e. fn_series at (q,t); see the parameter-convention note in the docs.
    f = fn_series(field, ntot, sparams(lam), degree, q, t)
    p = pn_series(field, ntot, sparams(mu), degree, q, q / t)
    total = field.zero
    target_t = tuple(target)
    for kf, vf in f.terms.items():
        kp = tuple(a - b for a, b in zip(target_t, kf))
        if any(e < 0 for e in kp):
            continue
        vp = p.terms.get(kp)
        if vp is not None:
            total = total + vf * vp
    return total.normalize()


# -- numeric regime --------------------------------------------------------------

def _mp_qpoch_inf(a, q, mp):
    """(a; q)_inf as a convergent product, |q| < 1."""
    out = mp.mpf(1)
    term = a
    tol = mp.mpf(10) ** (-(mp.dps + 10))
    while abs(term) > tol:
        out *= (1 - term)
        term *= q
    return out


def _mp_qpoch(a, q, m, mp):
    out = mp.mpf(1)
    if m >= 0:
        x = a
        for _ in range(m):
            out *= (1 - x)
            x *= q
    else:
        x = a / q
        for _ in range(-m):
            out /= (1 - x)
            x /= q
    return out


def _mp_cn(n, theta, s, q, t, mp):
    """Numeric c_n(theta) through the same recursion as the exact path."""
    if n == 1:
        return mp.mpf(1)
    last = [theta.get((i, n), 0) for i in range(1, n)]
    d = mp.mpf(1)
    for i in range(n - 1):
        th = last[i]
        d *= (q / t) ** th
        d *= _mp_qpoch(t, q, th, mp) / _mp_qpoch(q, q, th, mp)
        d *= _mp_qpoch(t * s[n - 1] / s[i], q, th, mp) / _mp_qpoch(q * s[n - 1] / s[i], q, th, mp)
    for i in range(n - 1):
        for j in range(i + 1, n - 1):
            thi, thj = last[i], last[j]
            d *= _mp_qpoch(t * s[j] / s[i], q, thi, mp) / _mp_qpoch(q * s[j] / s[i], q, thi, mp)
            d *= _mp_qpoch(q ** (-thj) * q * s[j] / (t * s[i]), q, thi, mp) / \
                 _mp_qpoch(q ** (-thj) * s[j] / s[i], q, thi, mp)
    shifted = [q ** (-last[i - 1]) * s[i - 1] for i in range(1, n)]
    inner = {k: v for k, v in theta.items() if k[1] < n}
    return _mp_cn(n - 1, inner, shifted, q, t, mp) * d


def _mp_pn(n, ratios, s, q, t, mp, tol, max_degree=60):
    """Numeric p_n at consecutive-ratio values `ratios`, adaptively truncated.

    Raises PoleError-style RuntimeError when the tail fails to fall below tol.
    """
    total = mp.mpf(0)
    prev_shells = []
    for degree in range(max_degree + 1):
        shell = mp.mpf(0)
        for theta in _theta_matrices(n, degree):
            z = _theta_zvec(theta, n)
            if sum(z) != degree:
                continue
            mono = mp.mpf(1)
            for r, e in zip(ratios, z):
                mono *= r ** e
            shell += _mp_cn(n, theta, s, q, t, mp) * mono
        total += shell
        prev_shells.append(abs(shell))
        if degree >= 3 and all(x <= tol * max(abs(total), mp.mpf(1)) for x in prev_shells[-3:]):
            return total
    raise RuntimeError("series truncation did not converge within the degree budget")


def principal_specialization_check(n: int, q, t, s_values, dps: int = 60,
                                   tol_exp: int = -25) -> float:
    """Relative deviation between p_n at x_i = t^{n-i} and the infinite-product
    closed form, in the domain |t| > |q|^{-(n-2)}."""
    mp = mpmath.mp
    old = mp.dps
    mp.dps = dps
    try:
        q = mp.mpf(q) if not isinstance(q, str) else mp.mpf(q)
        t = mp.mpf(t)
        s = [mp.mpf(x) for x in s_values]
        tol = mp.mpf(10) ** tol_exp
        ratios = [1 / t] * (n - 1)
        lhs = _mp_pn(n, ratios, s, q, t, mp, tol)
        rhs = mp.mpf(1)
        for i in range(1, n + 1):
            rhs *= _mp_qpoch_inf(q / t, q, mp) / _mp_qpoch_inf(q / t ** i, q, mp)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                rhs *= _mp_qpoch_inf(q * s[j - 1] / (t * s[i - 1]), q, mp) / \
                       _mp_qpoch_inf(q * s[j - 1] / s[i - 1], q, mp)
        return float(abs(lhs - rhs) / abs(rhs))
    finally:
        mp.dps = old


def transform_check(n: int, m: int, q, t, s_values, x_value, y_values,
                    dps: int = 60, tol_exp: int = -25, mu_budget: int = 40) -> float:
    """Relative deviation between the two sides of the p_{n+m} -> p_m
    transformation at numeric parameters (principal specialization on the
    first n variables)."""
    mp = mpmath.mp
    old = mp.dps
    mp.dps = dps
    try:
        q = mp.mpf(q)
        t = mp.mpf(t)
        s = [mp.mpf(v) for v in s_values]
        x = mp.mpf(x_value)
        y = [mp.mpf(v) for v in y_values]
        tol = mp.mpf(10) ** tol_exp
        # LHS
        xs = [x * t ** (n - i) for i in range(1, n + 1)] + y
        ratios = [xs[i + 1] / xs[i] for i in range(n + m - 1)]
        lhs = _mp_pn(n + m, ratios, s, q, t, mp, tol)
        for k in range(m):
            lhs *= _mp_qpoch_inf(q * y[k] / (t ** n * x), q, mp) / \
                   _mp_qpoch_inf(t * y[k] / x, q, mp)
        # RHS
        pref = mp.mpf(1)
        for i in range(1, n + 1):
            pref *= _mp_qpoch_inf(q / t, q, mp) / _mp_qpoch_inf(q / t ** i, q, mp)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                pref *= _mp_qpoch_inf(q * s[j - 1] / (t * s[i - 1]), q, mp) / \
                        _mp_qpoch_inf(q * s[j - 1] / s[i - 1], q, mp)
        total = mp.mpf(0)
        y_ratios = [y[i + 1] / y[i] for i in range(m - 1)]
        converged = False
        prev = []
        for d in range(mu_budget + 1):
            shell = mp.mpf(0)
            for mu in _compositions_of(d, m):
                w = _mp_nmulti(n, m, mu, s, q, t, mp)
                if w == 0:
                    continue
                s_inner = [q ** mu[i] * s[n + i] for i in range(m)]
                pm = _mp_pn(m, y_ratios, s_inner, q, t, mp, tol) if m > 1 else mp.mpf(1)
                mono = mp.mpf(1)
                for k in range(m):
                    mono *= (t * y[k] / x) ** mu[k]
                shell += w * pm * mono
            total += shell
            prev.append(abs(shell))
            if d >= 3 and all(v <= tol * max(abs(total), mp.mpf(1)) for v in prev[-3:]):
                converged = True
                break
        if not converged:
            raise RuntimeError("mu-sum truncation did not converge within the budget")
        rhs = pref * total
        return float(abs(lhs - rhs) / abs(rhs))
    finally:
        mp.dps = old


def _mp_nmulti(n, m, mu, s, q, t, mp):
    out = mp.mpf(1)
    for k in range(1, m + 1):
        for i in range(1, n + k + 1):
            out *= _mp_qpoch(q * s[n + k - 1] / (t * s[i - 1]), q, mu[k - 1], mp) / \
                   _mp_qpoch(q * s[n + k - 1] / s[i - 1], q, mu[k - 1], mp)
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            base = q ** (-mu[i - 1]) * s[n + j - 1] / s[n + i - 1]
            out *= _mp_qpoch(t * base, q, mu[j - 1], mp) / _mp_qpoch(base, q, mu[j - 1], mp)
    return out
