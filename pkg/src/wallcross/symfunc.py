"""Symmetric functions over exact (q, t) scalars.

Internally everything is stored in the power-sum basis, where products are
concatenation and the classical pairings are diagonal.  Conversions to and
from {m, e, s, P, Htilde} are cached per degree; s uses the symmetric-group
character table (ribbon recursion), m uses the multiplication rule for
m_nu * p_k, e uses Newton's identity, P is Gram-Schmidt against dominance
in the q-deformed pairing, and Htilde is the integral form of P with the
power sums rescaled by 1/(1 - q2^(-k)).

Pairings.  inner_plain is the deformed Hall pairing
    <p_k, p_k> = k (1 - q1^k)/(1 - q2^(-k));
inner_mod is the localization pairing in which the Htilde are orthogonal,
    <p_k, p_k> = (-1)^(k-1) k (1 - q1^k)(1 - q2^k).
Fixed-point restrictions diagonalize inner_mod: restrict(Htilde_mu, la) is
[T_la] when la = mu and 0 otherwise, and euler_form sums the pointwise
products over fixed points against 1/[T].
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .linalg import mat_inverse
from .partitions import (
    Partition,
    boxes,
    bracket,
    chi,
    conjugate,
    dominates,
    enumerate_partitions,
    removable_ribbons,
    ribbon_height,
    tangent_character,
)
from .scalars import Scalar, monomial, one, q1, q2, rational, zero

BASES = ("m", "e", "p", "s", "P", "Htilde")


def z_stat(mu: Partition) -> int:
    z = 1
    mult: dict[int, int] = {}
    for part in mu:
        mult[part] = mult.get(part, 0) + 1
    for v, m in mult.items():
        z *= v**m
        for i in range(1, m + 1):
            z *= i
    return z


# ---------------------------------------------------------------------------
# the SymFunc container
# ---------------------------------------------------------------------------


class SymFunc:
    """A symmetric function tagged with the basis its coefficients live in."""

    __slots__ = ("basis", "coeffs")

    def __init__(self, basis: str, coeffs: dict):
        assert basis in BASES, basis
        self.basis = basis
        self.coeffs = {tuple(la): c for la, c in coeffs.items() if c}

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        if self.basis == other.basis:
            return self.coeffs == other.coeffs
        return self.to_basis("p").coeffs == other.to_basis("p").coeffs

    def __hash__(self):
        return hash(frozenset(self.to_basis("p").coeffs.items()))

    def degrees(self) -> set:
        return {sum(la) for la in self.coeffs}

    def coeff(self, la) -> Scalar:
        return self.coeffs.get(tuple(la), zero())

    def __add__(self, other):
        o = other.to_basis(self.basis)
        out = dict(self.coeffs)
        for la, c in o.coeffs.items():
            out[la] = out.get(la, zero()) + c
        return SymFunc(self.basis, out)

    def __neg__(self):
        return SymFunc(self.basis, {la: -c for la, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: Scalar):
        return SymFunc(self.basis, {la: v * c for la, v in self.coeffs.items()})

    def __mul__(self, other):
        a, b = self.to_basis("p").coeffs, other.to_basis("p").coeffs
        out: dict = {}
        for la, ca in a.items():
            for mu, cb in b.items():
                nu = tuple(sorted(la + mu, reverse=True))
                c = ca * cb
                out[nu] = out.get(nu, zero()) + c
        return SymFunc("p", out).to_basis(self.basis)

    def to_basis(self, basis: str) -> "SymFunc":
        if basis == self.basis:
            return self
        if self.basis != "p":
            return self._p_form().to_basis(basis)
        if basis == "p":
            return self
        out: dict = {}
        for mu, c in self.coeffs.items():
            for la, d in _p_in_basis(basis, mu).items():
                acc = out.get(la)
                v = c * d
                out[la] = v if acc is None else acc + v
        return SymFunc(basis, out)

    def _p_form(self) -> "SymFunc":
        out: dict = {}
        for la, c in self.coeffs.items():
            for mu, d in _to_p(self.basis, la).items():
                acc = out.get(mu)
                v = c * d
                out[mu] = v if acc is None else acc + v
        return SymFunc("p", out)

    def __repr__(self):
        terms = ", ".join(f"{la}: {c}" for la, c in sorted(self.coeffs.items(), reverse=True))
        return f"SymFunc[{self.basis}]({{{terms}}})"


def basis_element(basis: str, la) -> SymFunc:
    return SymFunc(basis, {tuple(la): one()})


def m_(la):
    return basis_element("m", la)


def e_(la):
    return basis_element("e", la)


def p_(la):
    return basis_element("p", la)


def s_(la):
    return basis_element("s", la)


def P_(la):
    return basis_element("P", la)


def Ht_(la):
    return basis_element("Htilde", la)


# ---------------------------------------------------------------------------
# expansions into the power-sum basis (cached per element / per degree)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _character(la: Partition, mu: Partition) -> int:
    """Symmetric-group character chi^la(mu) via ribbon removal on mu[0]."""
    if not mu:
        return 1 if not la else 0
    k, rest = mu[0], mu[1:]
    acc = 0
    for nu, rb in removable_ribbons(la, k):
        acc += (-1) ** ribbon_height(rb) * _character(nu, rest)
    return acc


@lru_cache(maxsize=None)
def _p_to_m_matrix(n: int) -> tuple:
    """Rows mu: expansion of p_mu in the m basis (integer coefficients)."""
    order = enumerate_partitions(n)
    rows = []
    for mu in order:
        cur = {(): 1}
        for k in mu:
            nxt: dict = {}
            for nu, c in cur.items():
                seen = set()
                counts: dict[int, int] = {}
                for v in nu:
                    counts[v] = counts.get(v, 0) + 1
                for v in counts:
                    if v in seen:
                        continue
                    seen.add(v)
                    lst = list(nu)
                    lst.remove(v)
                    new = tuple(sorted(lst + [v + k], reverse=True))
                    mult = sum(1 for x in new if x == v + k)
                    nxt[new] = nxt.get(new, 0) + c * mult
                new = tuple(sorted(nu + (k,), reverse=True))
                mult = sum(1 for x in new if x == k)
                nxt[new] = nxt.get(new, 0) + c * mult
            cur = nxt
        rows.append(tuple(Fraction(cur.get(la, 0)) for la in order))
    return rows


@lru_cache(maxsize=None)
def _m_to_p_matrix(n: int) -> tuple:
    # p = R m with R = _p_to_m_matrix, so row la of R^(-1) is m_la in p
    rows = _p_to_m_matrix(n)
    inv = mat_inverse([list(r) for r in rows], Fraction(1), Fraction(0))
    return tuple(tuple(r) for r in inv)


@lru_cache(maxsize=None)
def _newton_e_in_p(k: int) -> tuple:
    """e_k expanded in p, as a tuple of (mu, Fraction)."""
    if k == 0:
        return (((), Fraction(1)),)
    acc: dict = {}
    for i in range(1, k + 1):
        for mu, c in _newton_e_in_p(k - i):
            nu = tuple(sorted(mu + (i,), reverse=True))
            acc[nu] = acc.get(nu, Fraction(0)) + Fraction((-1) ** (i - 1), k) * c
    return tuple(sorted(acc.items()))


@lru_cache(maxsize=None)
def _macdonald_P_in_p(n: int) -> dict:
    """Gram-Schmidt in the plain pairing against dominance order."""
    order = enumerate_partitions(n)
    done: dict = {}
    norms: dict = {}
    for la in reversed(order):  # ascending lex: dominance-smaller mu come first
        v = {mu: rational(c) for mu, c in _m_in_p(la).items() if c}
        for mu in done:
            if dominates(la, mu) and mu != la:
                num = _inner_p_plain(v, done[mu])
                if num:
                    f = num / norms[mu]
                    for rho, c in done[mu].items():
                        acc = v.get(rho, zero()) - f * c
                        if acc:
                            v[rho] = acc
                        else:
                            v.pop(rho, None)
        done[la] = v
        norms[la] = _inner_p_plain(v, v)
    return done


def _m_in_p(la: Partition) -> dict:
    n = sum(la)
    order = enumerate_partitions(n)
    row = _m_to_p_matrix(n)[order.index(la)]
    return {mu: c for mu, c in zip(order, row) if c}


def _inner_p_plain(a: dict, b: dict) -> Scalar:
    """Plain pairing of raw p-coefficient dicts (used during Gram-Schmidt)."""
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    acc = zero()
    for mu, c in small.items():
        d = big.get(mu)
        if d is not None:
            acc = acc + c * d * _plain_weight(mu)
    return acc


@lru_cache(maxsize=None)
def _integral_factor(la: Partition) -> Scalar:
    """q2^(-|la|) prod (q2^(l+1) - q1^a): turns P into its integral form."""
    from .partitions import arm, leg

    out = q2(-sum(la))
    for x, y in boxes(la):
        out = out * (q2(leg(la, x, y) + 1) - q1(arm(la, x, y)))
    return out


@lru_cache(maxsize=None)
def _to_p(basis: str, la: Partition) -> dict:
    """Expansion of the basis element indexed by la in power sums."""
    la = tuple(la)
    n = sum(la)
    if basis == "p":
        return {la: one()}
    if basis == "m":
        return {mu: rational(c) for mu, c in _m_in_p(la).items()}
    if basis == "s":
        return {
            mu: rational(Fraction(_character(la, mu), z_stat(mu)))
            for mu in enumerate_partitions(n)
            if _character(la, mu)
        }
    if basis == "e":
        acc = SymFunc("p", {(): one()})
        for k in la:
            acc = acc * SymFunc("p", {mu: rational(c) for mu, c in _newton_e_in_p(k)})
        return acc.coeffs
    if basis == "P":
        return dict(_macdonald_P_in_p(n)[la])
    if basis == "Htilde":
        c = _integral_factor(la)
        out = {}
        for mu, v in _macdonald_P_in_p(n)[la].items():
            f = c
            for k in mu:
                f = f / (one() - q2(-k))
            out[mu] = v * f
        return out
    raise ValueError(f"unknown basis {basis!r}")


@lru_cache(maxsize=None)
def _e_in_p(la: Partition) -> tuple:
    acc = {(): Fraction(1)}
    for k in la:
        nxt: dict = {}
        for mu, c in acc.items():
            for rho, d in _newton_e_in_p(k):
                nu = tuple(sorted(mu + rho, reverse=True))
                nxt[nu] = nxt.get(nu, Fraction(0)) + c * d
        acc = {mu: c for mu, c in nxt.items() if c}
    return tuple(sorted(acc.items()))


@lru_cache(maxsize=None)
def _p_in_e_matrix(n: int) -> dict:
    order = enumerate_partitions(n)
    M = [[Fraction(0)] * len(order) for _ in order]
    for i, la in enumerate(order):
        for mu, c in _e_in_p(la):
            M[i][order.index(mu)] = c
    inv = mat_inverse(M, Fraction(1), Fraction(0))
    return {
        mu: {la: inv[i][j] for j, la in enumerate(order) if inv[i][j]}
        for i, mu in enumerate(order)
    }


def _p_in_m(mu: Partition) -> dict:
    n = sum(mu)
    order = enumerate_partitions(n)
    row = _p_to_m_matrix(n)[order.index(mu)]
    return {la: c for la, c in zip(order, row) if c}


@lru_cache(maxsize=None)
def _m_in_P(n: int) -> dict:
    """Triangular back-substitution: P_la = m_la + dominance-smaller terms."""
    order = enumerate_partitions(n)
    P_in_m = {}
    for la in order:
        md: dict = {}
        for mu, c in _macdonald_P_in_p(n)[la].items():
            for rho, d in _p_in_m(mu).items():
                acc = md.get(rho, zero()) + c * rational(d)
                if acc:
                    md[rho] = acc
                else:
                    md.pop(rho, None)
        P_in_m[la] = md
    out: dict = {}
    for la in reversed(order):  # ascending: smaller partitions resolved first
        expr = {la: one()}
        for nu, c in P_in_m[la].items():
            if nu != la:
                for rho, d in out[nu].items():
                    acc = expr.get(rho, zero()) - c * d
                    if acc:
                        expr[rho] = acc
                    else:
                        expr.pop(rho, None)
        out[la] = expr
    return out


@lru_cache(maxsize=None)
def _p_in_P(mu: Partition) -> dict:
    n = sum(mu)
    m_in_P = _m_in_P(n)
    out: dict = {}
    for la, c in _p_in_m(mu).items():
        for rho, d in m_in_P[la].items():
            acc = out.get(rho, zero()) + rational(c) * d
            if acc:
                out[rho] = acc
            else:
                out.pop(rho, None)
    return out


def _p_in_basis(basis: str, mu: Partition) -> dict:
    if basis == "p":
        return {mu: one()}
    n = sum(mu)
    if basis == "m":
        return {la: rational(c) for la, c in _p_in_m(mu).items()}
    if basis == "s":
        return {
            la: rational(_character(la, mu))
            for la in enumerate_partitions(n)
            if _character(la, mu)
        }
    if basis == "e":
        return {la: rational(c) for la, c in _p_in_e_matrix(n)[mu].items()}
    if basis == "P":
        return _p_in_P(mu)
    if basis == "Htilde":
        # Htilde_la = c_la * phi(P_la) with phi diagonal on p, so pull the
        # phi twist off p_mu and rescale the P coordinates
        f = one()
        for k in mu:
            f = f * (one() - q2(-k))
        return {
            la: c * f / _integral_factor(la) for la, c in _p_in_P(mu).items()
        }
    raise ValueError(f"unknown basis {basis!r}")


# ---------------------------------------------------------------------------
# pairings, twists, localization
# ---------------------------------------------------------------------------


def _pair_diag(f: SymFunc, g: SymFunc, weight) -> Scalar:
    a, b = f.to_basis("p").coeffs, g.to_basis("p").coeffs
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    acc = zero()
    for mu, c in small.items():
        d = big.get(mu)
        if d is not None:
            acc = acc + c * d * weight(mu)
    return acc


@lru_cache(maxsize=None)
def _plain_weight(mu: Partition) -> Scalar:
    out = rational(z_stat(mu))
    for k in mu:
        out = out * (one() - q1(k)) / (one() - q2(-k))
    return out


@lru_cache(maxsize=None)
def _mod_weight(mu: Partition) -> Scalar:
    out = rational(z_stat(mu) * (-1) ** (sum(mu) - len(mu)))
    for k in mu:
        out = out * (one() - q1(k)) * (one() - q2(k))
    return out


def _require_same_degree(f: SymFunc, g: SymFunc) -> None:
    if f and g and f.degrees() != g.degrees():
        raise ValueError(
            f"pairing of unequal degrees {sorted(f.degrees())} vs {sorted(g.degrees())}"
        )


def inner_plain(f: SymFunc, g: SymFunc) -> Scalar:
    """Deformed Hall pairing; P's are orthogonal, p's diagonal."""
    _require_same_degree(f, g)
    return _pair_diag(f, g, _plain_weight)


def inner_mod(f: SymFunc, g: SymFunc) -> Scalar:
    """Localization pairing; Htilde's are orthogonal, p's diagonal."""
    _require_same_degree(f, g)
    return _pair_diag(f, g, _mod_weight)


def omega(f: SymFunc) -> SymFunc:
    """The sign twist p_k -> (-1)^(k-1) p_k (sends s_la to s_la')."""
    p = f.to_basis("p")
    out = {mu: c * rational((-1) ** (sum(mu) - len(mu))) for mu, c in p.coeffs.items()}
    return SymFunc("p", out).to_basis(f.basis)


def scale_powersums(f: SymFunc, factor) -> SymFunc:
    """Diagonal operator p_k -> factor(k) * p_k, multiplicative over parts."""
    p = f.to_basis("p")
    out = {}
    for mu, c in p.coeffs.items():
        for k in mu:
            c = c * factor(k)
        out[mu] = c
    return SymFunc("p", out).to_basis(f.basis)


def torus_factor(la) -> Scalar:
    """[T_la]: the bracket of the tangent character at the fixed point."""
    return _torus_factor(tuple(la))


@lru_cache(maxsize=None)
def _torus_factor(la: Partition) -> Scalar:
    return bracket(tangent_character(la))


@lru_cache(maxsize=None)
def _Ht_norm(la: Partition) -> Scalar:
    f = Ht_(la)
    return inner_mod(f, f)


def restrict(f: SymFunc, la) -> Scalar:
    """Restriction of f to the torus fixed point la."""
    la = tuple(la)
    n = sum(la)
    if n not in f.degrees():
        return zero()
    if f.degrees() != {n}:
        p = f.to_basis("p")
        f = SymFunc("p", {mu: c for mu, c in p.coeffs.items() if sum(mu) == n})
    return torus_factor(la) * inner_mod(f, Ht_(la)) / _Ht_norm(la)


def restrictions(f: SymFunc, n: int) -> dict:
    return {la: restrict(f, la) for la in enumerate_partitions(n)}


def from_restrictions(values: dict) -> SymFunc:
    """Rebuild f (in the Htilde basis) from its fixed-point restrictions."""
    out = {}
    for la, v in values.items():
        la = tuple(la)
        if v:
            out[la] = v / torus_factor(la)
    return SymFunc("Htilde", out)


def euler_form(f: SymFunc, g: SymFunc) -> Scalar:
    """Sum over fixed points of f|_la g|_la / [T_la]."""
    _require_same_degree(f, g)
    acc = zero()
    for n in sorted(f.degrees() & g.degrees()):
        for la in enumerate_partitions(n):
            a = restrict(f, la)
            if a:
                b = restrict(g, la)
                if b:
                    acc = acc + a * b / torus_factor(la)
    return acc


def nabla(f: SymFunc) -> SymFunc:
    """Diagonal on Htilde: multiplies Htilde_la by the monomial chi(la)."""
    h = f.to_basis("Htilde")
    out = {la: c * chi(la) for la, c in h.coeffs.items()}
    return SymFunc("Htilde", out).to_basis(f.basis)


def integral_form(la) -> SymFunc:
    """The integral Macdonald form: P_la times its clearing factor."""
    la = tuple(la)
    return P_(la).scale(_integral_factor(la))
