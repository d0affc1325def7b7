"""Exact scalars: Laurent polynomials and rational functions in (q, t).

Everything downstream (symmetric functions, Fock coefficients, stable-basis
tables) is computed over the field Q(q, t), represented exactly.  Exponents
are rationals, not integers: renormalization factors such as chi^(1/2) and
the torus identification q1 = q*t, q2 = q*t^(-1) force powers like q^(1/2)
into the picture, so a monomial is a pair of Fraction exponents and no root
variables are ever introduced.

Two coordinate frames share this representation.  Internally all modules
work in the (q, t) frame, where the constructors :func:`q1` and :func:`q2`
return the monomials q*t and q*t^(-1).  :func:`change_coordinates`
reinterprets stored exponent pairs between the frames (an invertible linear
map on exponents, hence a ring isomorphism).

>>> x = q2() - q1() ** -1          # q2 - 1/q1, already in the (q,t) frame
>>> print(x)
1*q^(1)*t^(-1) - 1*q^(-1)*t^(-1)
>>> print(t() * x)                 # t * (q2 - 1/q1) = q - 1/q
1*q^(1)*t^(0) - 1*q^(-1)*t^(0)

A :class:`Scalar` is a reduced fraction num/den of sparse Laurent
polynomials.  Normalization divides out the gcd and then the leading term
of the denominator, so a denominator that is a single term disappears into
the numerator ("Laurent" literally means ``den == 1``) and two equal values
always have identical term dictionaries:

>>> print((one() - q(2)) / (one() - q()))
1*q^(1)*t^(0) + 1*q^(0)*t^(0)

Serialization (:meth:`Scalar.dumps` / :meth:`Scalar.loads`) emits terms in
descending lexicographic order of (q-exponent, t-exponent) with explicit
rational exponents; canonical form makes string equality the same thing as
value equality, which the cache and the golden-file tests rely on.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as _igcd
from typing import Callable, Iterable, NamedTuple

__all__ = [
    "Monomial",
    "LaurentPoly",
    "Scalar",
    "q",
    "t",
    "q1",
    "q2",
    "one",
    "zero",
    "rational",
    "monomial",
    "change_coordinates",
]


def _fr(x) -> Fraction:
    """Coerce int | str | Fraction to Fraction (exact)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected exact rational, got {type(x).__name__}")


def _ex(x):
    """Exponent normal form: plain int when integral, Fraction otherwise.

    int and Fraction compare and hash consistently, so mixing them in
    Monomial keys is safe; keeping the (overwhelmingly common) integer
    exponents as machine ints avoids Fraction overhead in hot paths.
    """
    if isinstance(x, int):
        return x
    if not isinstance(x, Fraction):
        x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


class Monomial(NamedTuple):
    """q^exp_q * t^exp_t with rational exponents; lex order = tuple order."""

    exp_q: object  # int | Fraction
    exp_t: object

    def __mul__(self, other: "Monomial") -> "Monomial":  # type: ignore[override]
        return Monomial(_ex(self.exp_q + other.exp_q), _ex(self.exp_t + other.exp_t))

    def inv(self) -> "Monomial":
        return Monomial(-self.exp_q, -self.exp_t)

    def __pow__(self, k) -> "Monomial":  # type: ignore[override]
        k = _fr(k)
        return Monomial(_ex(self.exp_q * k), _ex(self.exp_t * k))


_UNIT = Monomial(0, 0)

_TERM_RE = re.compile(
    r"^(-?\d+(?:/\d+)?)\*q\^\((-?\d+(?:/\d+)?)\)\*t\^\((-?\d+(?:/\d+)?)\)$"
)


class LaurentPoly:
    """Sparse Laurent polynomial: finite map Monomial -> Fraction, no zeros."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: dict | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if not isinstance(m, Monomial):
                    m = Monomial(_ex(m[0]), _ex(m[1]))
                c = _fr(c)
                if c:
                    clean[m] = clean.get(m, Fraction(0)) + c
                    if not clean[m]:
                        del clean[m]
        self._terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({_UNIT: Fraction(1)})

    @classmethod
    def term(cls, coeff, exp_q=0, exp_t=0) -> "LaurentPoly":
        return cls({Monomial(_ex(exp_q), _ex(exp_t)): _fr(coeff)})

    # -- predicates and views ----------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {_UNIT: Fraction(1)}

    def is_term(self) -> bool:
        return len(self._terms) == 1

    def terms(self) -> dict:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, exp_q, exp_t) -> Fraction:
        return self._terms.get(Monomial(_ex(exp_q), _ex(exp_t)), Fraction(0))

    def leading(self) -> tuple[Monomial, Fraction]:
        """Lex-largest term; errors on zero."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms)
        return m, self._terms[m]

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        r = LaurentPoly.__new__(LaurentPoly)
        r._terms = out
        r._hash = None
        return r

    def __neg__(self) -> "LaurentPoly":
        r = LaurentPoly.__new__(LaurentPoly)
        r._terms = {m: -c for m, c in self._terms.items()}
        r._hash = None
        return r

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self._terms or not other._terms:
            return LaurentPoly()
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = Monomial(m1.exp_q + m2.exp_q, m1.exp_t + m2.exp_t)
                s = out.get(m)
                if s is None:
                    out[m] = c1 * c2
                else:
                    s = s + c1 * c2
                    if s:
                        out[m] = s
                    else:
                        del out[m]
        r = LaurentPoly.__new__(LaurentPoly)
        r._terms = out
        r._hash = None
        return r

    def scale(self, c) -> "LaurentPoly":
        c = _fr(c)
        if not c:
            return LaurentPoly()
        r = LaurentPoly.__new__(LaurentPoly)
        r._terms = {m: cc * c for m, cc in self._terms.items()}
        r._hash = None
        return r

    def mul_term(self, coeff, mono: Monomial) -> "LaurentPoly":
        coeff = _fr(coeff)
        if not coeff:
            return LaurentPoly()
        r = LaurentPoly.__new__(LaurentPoly)
        r._terms = {
            Monomial(m.exp_q + mono.exp_q, m.exp_t + mono.exp_t): c * coeff
            for m, c in self._terms.items()
        }
        r._hash = None
        return r

    def __pow__(self, k: int) -> "LaurentPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("LaurentPoly powers take nonnegative integers")
        out = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def exact_div(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact division; ArithmeticError when divisor does not divide.

        Runs at the integer level: both sides are cleared to primitive
        polynomials over Z (common exponent denominators, minima at 0), where
        Gauss's lemma makes an exact quotient integral, so a non-integer
        peeling step — or a quotient term escaping the support-box difference,
        degree extremes being additive over a domain — disproves divisibility
        without Fraction traffic.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        if divisor.is_term():
            (m, c), = divisor._terms.items()
            return self.mul_term(Fraction(1) / c, m.inv())
        dq = _lcm(
            [m.exp_q.denominator for m in self._terms]
            + [m.exp_q.denominator for m in divisor._terms]
        )
        dt = _lcm(
            [m.exp_t.denominator for m in self._terms]
            + [m.exp_t.denominator for m in divisor._terms]
        )
        P, ps, psh = _intize(self, dq, dt)
        D, ds, dsh = _intize(divisor, dq, dt)
        Q = _idiv(P, D)
        if Q is None:
            raise ArithmeticError("exact_div: not a divisor")
        return _unintize(
            Q, dq, dt, ps / ds,
            Monomial(_ex(psh.exp_q - dsh.exp_q), _ex(psh.exp_t - dsh.exp_t)),
        )

    # -- structure ---------------------------------------------------------

    def map_exponents(self, f: Callable[[Monomial], Monomial]) -> "LaurentPoly":
        out: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            n = f(m)
            out[n] = out.get(n, Fraction(0)) + c
        return LaurentPoly(out)

    def content_monomial(self) -> Monomial:
        """Componentwise minimum of exponents (the dividing monomial)."""
        if not self._terms:
            raise ValueError("zero polynomial has no content")
        return Monomial(
            min(m.exp_q for m in self._terms),
            min(m.exp_t for m in self._terms),
        )

    def t_degree_range(self) -> tuple[Fraction, Fraction]:
        if not self._terms:
            raise ValueError("t_degree_range of zero polynomial")
        degs = [m.exp_t for m in self._terms]
        return min(degs), max(degs)

    def q_degree_range(self) -> tuple[Fraction, Fraction]:
        if not self._terms:
            raise ValueError("q_degree_range of zero polynomial")
        degs = [m.exp_q for m in self._terms]
        return min(degs), max(degs)

    def truncate_q(self, order) -> "LaurentPoly":
        order = _fr(order)
        return LaurentPoly(
            {m: c for m, c in self._terms.items() if m.exp_q <= order}
        )

    # -- identity ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- serialization -----------------------------------------------------

    def dumps(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, reverse=True):
            c = self._terms[m]
            body = f"q^({m.exp_q})*t^({m.exp_t})"
            if not parts:
                parts.append(f"{c}*{body}")
            elif c < 0:
                parts.append(f"- {-c}*{body}")
            else:
                parts.append(f"+ {c}*{body}")
        return " ".join(parts)

    @classmethod
    def loads(cls, s: str) -> "LaurentPoly":
        s = s.strip()
        if s == "0":
            return cls()
        chunks = re.split(r" ([+-]) ", s)
        terms: dict[Monomial, Fraction] = {}
        sign = 1
        for i, chunk in enumerate(chunks):
            if i % 2 == 1:
                sign = 1 if chunk == "+" else -1
                continue
            m = _TERM_RE.match(chunk.strip())
            if not m:
                raise ValueError(f"cannot parse term {chunk!r}")
            c, eq, et = Fraction(m.group(1)), Fraction(m.group(2)), Fraction(m.group(3))
            mono = Monomial(_ex(eq), _ex(et))
            terms[mono] = terms.get(mono, Fraction(0)) + sign * c
        return cls(terms)

    def __str__(self) -> str:
        return self.dumps()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.dumps()!r})"


# ---------------------------------------------------------------------------
# gcd of Laurent polynomials
#
# Exponents are cleared to N^2 (common denominator per variable, minima
# shifted to 0) and coefficients to Z; the gcd is then computed modularly
# (Brown): over 61-bit prime fields, evaluate t, take univariate gcds in q,
# interpolate the images, and verify the symmetric-lifted candidate by exact
# division over Q.  Unlucky primes fail the division check and are repaired
# by CRT with the next prime.  Desk-scale inputs never leave the first prime.
# ---------------------------------------------------------------------------

_PRIMES = (
    2305843009213693951,
    2305843009213693921,
    2305843009213693907,
    2305843009213693723,
    2305843009213693693,
    2305843009213693669,
    2305843009213693613,
    2305843009213693561,
)


class _UnluckyPrime(Exception):
    pass


# univariate dense polynomials mod p: list of ints, index = degree


def _up_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _up_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _up_trim(out)


def _up_divmod(a, b, p):
    a = list(a)
    if not b:
        raise ZeroDivisionError
    quo = [0] * max(0, len(a) - len(b) + 1)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        d = len(a) - len(b)
        quo[d] = c
        for i, cb in enumerate(b):
            a[i + d] = (a[i + d] - c * cb) % p
        _up_trim(a)
    return _up_trim(quo), a


def _up_gcd(a, b, p):
    a, b = _up_trim(list(a)), _up_trim(list(b))
    while b:
        a, b = b, _up_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _up_eval(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


# bivariate mod p: dict u_degree -> nonzero v-poly


def _bp_reduce(P: dict, p: int) -> dict:
    out: dict[int, list[int]] = {}
    for (u, v), c in P.items():
        c %= p
        if c:
            col = out.setdefault(u, [])
            if len(col) <= v:
                col.extend([0] * (v + 1 - len(col)))
            col[v] = c
    return {u: col for u, col in ((u, _up_trim(col)) for u, col in out.items()) if col}


def _bp_content(B, p):
    g: list[int] = []
    for col in B.values():
        g = _up_gcd(g, col, p)
        if len(g) == 1:
            return [1]
    return g


def _bp_div_content(B, g, p):
    if g == [1]:
        return B
    return {u: _up_divmod(col, g, p)[0] for u, col in B.items()}


def _bp_finalize(cont, H, p):
    out = {}
    for u, col in H.items():
        full = _up_mul(col, cont, p)
        for v, c in enumerate(full):
            if c:
                out[(u, v)] = c
    if not out:
        raise _UnluckyPrime
    inv = pow(out[max(out)], p - 2, p)
    return {k: c * inv % p for k, c in out.items()}


def _gcd_mod_p(P: dict, Q: dict, p: int, offset: int = 0) -> dict:
    """Monic (lex) gcd mod p of integer-coefficient dicts {(u,v): int}.

    Interpolates univariate gcd images at v = offset, offset+1, ...; an
    image at an unlucky evaluation point is either outvoted (its u-degree
    exceeds the running minimum) or exposed by the stability point taken
    after the interpolation is determined, which restarts the window.  The
    result can still be a strict multiple of the truth for an unlucky
    prime; the caller verifies over Q before trusting it.
    """
    A, B = _bp_reduce(P, p), _bp_reduce(Q, p)
    if not A or not B:
        raise _UnluckyPrime
    cA = _bp_content(A, p)
    A = _bp_div_content(A, cA, p)
    cB = _bp_content(B, p)
    B = _bp_div_content(B, cB, p)
    cont = _up_gcd(cA, cB, p)
    duA, duB = max(A), max(B)
    if duA == 0 or duB == 0:
        return _bp_finalize(cont, {0: [1]}, p)
    gamma = _up_gcd(A[duA], B[duB], p)
    dvA = max(len(c) - 1 for c in A.values())
    dvB = max(len(c) - 1 for c in B.values())
    need = min(dvA, dvB) + len(gamma)  # points determining the candidate
    npoints = 0
    M = [1]
    C: dict[int, list[int]] = {}
    dmin = None
    for alpha in range(offset, offset + 8 * need + 40):
        alpha %= p
        if _up_eval(gamma, alpha, p) == 0:
            continue
        pa = _up_trim([_up_eval(A.get(u, []), alpha, p) for u in range(duA + 1)])
        qa = _up_trim([_up_eval(B.get(u, []), alpha, p) for u in range(duB + 1)])
        if len(pa) - 1 != duA or len(qa) - 1 != duB:
            continue
        g = _up_gcd(pa, qa, p)
        dg = len(g) - 1
        if dg == 0:
            return _bp_finalize(cont, {0: [1]}, p)
        if dmin is None or dg < dmin:
            dmin, npoints, M, C = dg, 0, [1], {}
        elif dg > dmin:
            continue
        ga = _up_eval(gamma, alpha, p)
        img = [c * ga % p for c in g]
        deltas = {
            u: (img[u] - _up_eval(C.get(u, []), alpha, p)) % p for u in range(dmin + 1)
        }
        if npoints >= need:
            if any(deltas.values()):
                # a bad point slipped into this window; slide past it
                npoints, M, C = 0, [1], {}
                continue
            C = {u: col for u, col in C.items() if col}
            if not C:
                raise _UnluckyPrime
            ccont = _bp_content(C, p)
            return _bp_finalize(cont, _bp_div_content(C, ccont, p), p)
        minv = pow(_up_eval(M, alpha, p), p - 2, p)
        for u, delta in deltas.items():
            if delta:
                add = [c * delta % p * minv % p for c in M]
                cu = C.get(u, [])
                merged = list(cu) + [0] * max(0, len(add) - len(cu))
                for i, c in enumerate(add):
                    merged[i] = (merged[i] + c) % p
                C[u] = _up_trim(merged)
        npoints += 1
        M = _up_mul(M, [(-alpha) % p, 1], p)
    raise _UnluckyPrime


def _lcm(nums: Iterable[int]) -> int:
    out = 1
    for n in nums:
        if n:
            out = out * n // _igcd(out, n)
    return out


def _intize(p: LaurentPoly, dq: int, dt: int):
    """Clear p to a primitive integer dict {(u, v): int}.

    p == scale * q^(shift.exp_q) * t^(shift.exp_t)
               * sum c[(u, v)] q^(u/dq) t^(v/dt)
    with per-variable minima at 0 and integer content 1 (sign of the
    lex-leading coefficient preserved).  Returns (dict, scale, shift).
    """
    shift = p.content_monomial()
    sq, st = shift.exp_q, shift.exp_t
    raw = {}
    for m, c in p._terms.items():
        raw[(int((m.exp_q - sq) * dq), int((m.exp_t - st) * dt))] = c
    den = _lcm([c.denominator for c in raw.values()])
    out = {k: c.numerator * (den // c.denominator) for k, c in raw.items()}
    ic = 0
    for c in out.values():
        ic = _igcd(ic, c)
    if ic > 1:
        out = {k: c // ic for k, c in out.items()}
    return out, Fraction(ic, den), shift


def _unintize(d: dict, dq: int, dt: int, scale: Fraction, shift: Monomial) -> LaurentPoly:
    sq, st = shift.exp_q, shift.exp_t
    terms = {}
    for (u, v), c in d.items():
        eq = sq + (u if dq == 1 else Fraction(u, dq))
        et = st + (v if dt == 1 else Fraction(v, dt))
        terms[Monomial(_ex(eq), _ex(et))] = scale * c
    r = LaurentPoly.__new__(LaurentPoly)
    r._terms = terms
    r._hash = None
    return r


def _idiv(P: dict, D: dict):
    """Exact quotient of integer dicts {(u, v): int}, or None.

    Valid for primitive inputs: there Gauss's lemma makes an exact rational
    quotient integral, so a fractional peeling step disproves divisibility,
    as does a quotient term outside the componentwise difference of the
    support boxes (degree extremes are additive over a domain).  The
    remainder's lex-leading monomial drops strictly every step and the
    quotient support lives in the box, which bounds the iteration count.
    """
    if not P:
        return {}
    dk = max(D)
    dc = D[dk]
    du, dv = dk
    ulo = min(u for u, _ in P) - min(u for u, _ in D)
    uhi = max(u for u, _ in P) - max(u for u, _ in D)
    vlo = min(v for _, v in P) - min(v for _, v in D)
    vhi = max(v for _, v in P) - max(v for _, v in D)
    if uhi < ulo or vhi < vlo:
        return None
    rem = dict(P)
    quo: dict[tuple[int, int], int] = {}
    divisor = list(D.items())
    for _ in range((uhi - ulo + 1) * (vhi - vlo + 1) + 1):
        if not rem:
            return quo
        rk = max(rem)
        qu, qv = rk[0] - du, rk[1] - dv
        if not (ulo <= qu <= uhi and vlo <= qv <= vhi):
            return None
        qc, sp = divmod(rem[rk], dc)
        if sp:
            return None
        quo[(qu, qv)] = qc
        for (su, sv), sc in divisor:
            k = (su + qu, sv + qv)
            nv = rem.get(k, 0) - qc * sc
            if nv:
                rem[k] = nv
            else:
                rem.pop(k, None)
    return None


def _z_divides(cand: dict, P: dict) -> bool:
    return _idiv(P, cand) is not None


def _gcd_int(P: dict, Q: dict) -> dict:
    """gcd (associate) in Z[u,v] of primitive dicts {(u,v): int}."""
    glex = _igcd(P[max(P)], Q[max(Q)])
    acc = None
    accdeg = None
    for p in _PRIMES:
        if P[max(P)] % p == 0 or Q[max(Q)] % p == 0:
            continue
        Gp = None
        for offset in (0, 1009, 7919):
            try:
                Gp = _gcd_mod_p(P, Q, p, offset)
                break
            except _UnluckyPrime:
                continue
        if Gp is None:
            continue
        if Gp == {(0, 0): 1}:
            return {(0, 0): 1}
        s = glex % p
        Gp = {k: c * s % p for k, c in Gp.items()}
        deg = (max(u for u, _ in Gp), max(v for _, v in Gp))
        if acc is None or (deg[0] <= accdeg[0] and deg[1] <= accdeg[1] and deg != accdeg):
            acc, accdeg = (p, Gp), deg
        elif deg == accdeg:
            m, G = acc
            mm = m * p
            inv = pow(m % p, p - 2, p)
            comb = {}
            for k in set(G) | set(Gp):
                a, b = G.get(k, 0), Gp.get(k, 0)
                x = (a + (b - a) * inv % p * m) % mm
                if x:
                    comb[k] = x
            acc = (mm, comb)
        else:
            continue
        m, G = acc
        cand = {k: (c if c <= m // 2 else c - m) for k, c in G.items()}
        ic = 0
        for c in cand.values():
            ic = _igcd(ic, c)
        if ic > 1:
            cand = {k: c // ic for k, c in cand.items()}
        if _z_divides(cand, P) and _z_divides(cand, Q):
            return cand
    raise ArithmeticError("modular gcd failed to stabilize across prime bank")


def _exp_lcms(p: LaurentPoly, q: LaurentPoly) -> tuple[int, int]:
    dq = _lcm(
        [m.exp_q.denominator for m in p._terms] + [m.exp_q.denominator for m in q._terms]
    )
    dt = _lcm(
        [m.exp_t.denominator for m in p._terms] + [m.exp_t.denominator for m in q._terms]
    )
    return dq, dt


def laurent_gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """gcd up to units, canonicalized: min exponents 0, leading coefficient 1."""
    base = q if p.is_zero() else (p if q.is_zero() else None)
    if base is not None:
        if base.is_zero():
            return LaurentPoly()
        shifted = base.mul_term(Fraction(1), base.content_monomial().inv())
        _, lc = shifted.leading()
        return shifted.scale(Fraction(1) / lc)
    if p.is_term() or q.is_term():
        return LaurentPoly.one()

    dq, dt = _exp_lcms(p, q)
    g = _gcd_int(_intize(p, dq, dt)[0], _intize(q, dq, dt)[0])
    # minima are already 0 per variable: q | p would force min_u > 0 in both
    return _unintize(g, dq, dt, Fraction(1, g[max(g)]), _UNIT)


def laurent_reduce(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Divide gcd(num, den) out of both, entirely at the integer level.

    No unit normalization is applied: the quotients keep the callers'
    monomial shifts and rational scales, which Scalar's constructor then
    normalizes once.
    """
    if num.is_term() or den.is_term():
        return num, den
    dq, dt = _exp_lcms(num, den)
    N, ns, nsh = _intize(num, dq, dt)
    D, ds, dsh = _intize(den, dq, dt)
    g = _gcd_int(N, D)
    if len(g) == 1:
        # a single-term gcd of primitive minima-at-zero dicts is a unit
        return num, den
    return (
        _unintize(_idiv(N, g), dq, dt, ns, nsh),
        _unintize(_idiv(D, g), dq, dt, ds, dsh),
    )


# ---------------------------------------------------------------------------
# Scalar: the fraction field
# ---------------------------------------------------------------------------


class Scalar:
    """Reduced fraction of Laurent polynomials with canonical normalization.

    Invariants after construction: gcd(num, den) = 1; the denominator's
    lex-leading term is exactly 1*q^(0)*t^(0).  In particular a denominator
    consisting of one term is folded into the numerator, so ``den.is_one()``
    is the exact test for being a Laurent polynomial.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None, *, _normalized=False):
        if den is None:
            den = LaurentPoly.one()
        if _normalized:
            self.num, self.den = num, den
            self._hash = None
            return
        if den.is_zero():
            raise ZeroDivisionError("Scalar with zero denominator")
        if num.is_zero():
            self.num, self.den = LaurentPoly(), LaurentPoly.one()
            self._hash = None
            return
        if not den.is_one():
            if den.is_term():
                (m, c), = den.terms().items()
                num = num.mul_term(Fraction(1) / c, m.inv())
                den = LaurentPoly.one()
            else:
                num, den = laurent_reduce(num, den)
                if den.is_term():
                    # the gcd carried the denominator's polynomial part
                    (m, c), = den._terms.items()
                    num = num.mul_term(Fraction(1) / c, m.inv())
                    den = LaurentPoly.one()
                else:
                    m, c = den.leading()
                    if c != 1 or m != _UNIT:
                        num = num.mul_term(Fraction(1) / c, m.inv())
                        den = den.mul_term(Fraction(1) / c, m.inv())
        self.num, self.den = num, den
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "Scalar":
        return cls(p, LaurentPoly.one(), _normalized=True)

    # -- predicates --------------------------------------------------------

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def is_term(self) -> bool:
        return self.den.is_one() and self.num.is_term()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    # -- arithmetic --------------------------------------------------------

    def _combine(self, other: "Scalar", subtract: bool) -> "Scalar":
        n1, d1 = self.num, self.den
        n2, d2 = other.num, other.den
        if d1 == d2:
            num = n1 - n2 if subtract else n1 + n2
            return Scalar(num, d1)
        g = laurent_gcd(d1, d2)
        if g.is_one():
            a, b = d1, d2  # den = d1*d2; nothing to split off
        else:
            a, b = d1.exact_div(g), d2.exact_div(g)
        lhs, rhs = n1 * b, n2 * a
        num = lhs - rhs if subtract else lhs + rhs
        if num.is_zero():
            return Scalar(LaurentPoly())
        # any common factor of num and den = g*a*b divides g: a prime of a
        # (or b) dividing num would divide n1 (or n2), contradicting
        # reducedness, since a, b and the opposite numerator avoid it
        if not g.is_one():
            g2 = laurent_gcd(num, g)
            if not g2.is_one():
                num = num.exact_div(g2)
                g = g.exact_div(g2)
            den = g * a * b
            if den.is_one():
                return Scalar.from_laurent(num)
            if den.is_term():
                (m, c), = den._terms.items()
                return Scalar.from_laurent(num.mul_term(Fraction(1) / c, m.inv()))
            m, c = den.leading()
            if c != 1 or m != _UNIT:
                num = num.mul_term(Fraction(1) / c, m.inv())
                den = den.mul_term(Fraction(1) / c, m.inv())
            return Scalar(num, den, _normalized=True)
        den = a * b
        if den.is_one():
            return Scalar.from_laurent(num)
        # d1, d2 normalized with coprime product: already reduced and
        # lex-leading term of the product is the unit term
        return Scalar(num, den, _normalized=True)

    def __add__(self, other: "Scalar") -> "Scalar":
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._combine(other, False)

    def __sub__(self, other: "Scalar") -> "Scalar":
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._combine(other, True)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.num, self.den, _normalized=True)

    def __mul__(self, other: "Scalar") -> "Scalar":
        if not isinstance(other, Scalar):
            return NotImplemented
        if not self or not other:
            return Scalar(LaurentPoly())
        # cross-cancel so the product of reduced fractions is already reduced
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if not d2.is_one():
            g = laurent_gcd(n1, d2)
            if not g.is_one():
                n1, d2 = n1.exact_div(g), d2.exact_div(g)
        if not d1.is_one():
            g = laurent_gcd(n2, d1)
            if not g.is_one():
                n2, d1 = n2.exact_div(g), d1.exact_div(g)
        num, den = n1 * n2, d1 * d2
        if den.is_one():
            return Scalar.from_laurent(num)
        m, c = den.leading()
        if c != 1 or m != _UNIT:
            num = num.mul_term(Fraction(1) / c, m.inv())
            den = den.mul_term(Fraction(1) / c, m.inv())
        return Scalar(num, den, _normalized=True)

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        return Scalar(self.den, self.num)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        if not isinstance(other, Scalar):
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by zero Scalar")
        return self * other.inverse()

    def __pow__(self, k: int) -> "Scalar":
        if not isinstance(k, int):
            raise TypeError("Scalar powers take integers")
        if k < 0:
            return self.inverse() ** (-k)
        out = Scalar.from_laurent(LaurentPoly.one())
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # -- identity ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- analysis ----------------------------------------------------------

    def t_degree_range(self) -> tuple[Fraction, Fraction]:
        if not self.den.is_one():
            raise ValueError("t_degree_range needs a Laurent polynomial (den == 1)")
        return self.num.t_degree_range()

    def q_degree_range(self) -> tuple[Fraction, Fraction]:
        if not self.den.is_one():
            raise ValueError("q_degree_range needs a Laurent polynomial (den == 1)")
        return self.num.q_degree_range()

    def bar_substitute(self, var: str) -> "Scalar":
        """Substitute var -> var^(-1) for var in {'q','t'} (exponent negation)."""
        if var not in ("q", "t"):
            raise ValueError("var must be 'q' or 't'")
        if var == "q":
            f = lambda m: Monomial(-m.exp_q, m.exp_t)
        else:
            f = lambda m: Monomial(m.exp_q, -m.exp_t)
        return Scalar(self.num.map_exponents(f), self.den.map_exponents(f))

    def series_expand(self, order) -> LaurentPoly:
        """Power-series expansion, kept to monomials of q-degree <= order.

        The denominator must have a unique term of minimal q-exponent; the
        expansion is the geometric series in E = 1 - den/(that term), whose
        terms then all carry positive q-exponent.
        """
        order = _fr(order)
        if not self:
            return LaurentPoly()
        if self.den.is_one():
            return self.num.truncate_q(order)
        terms = self.den.terms()
        qmin = min(m.exp_q for m in terms)
        anchors = [m for m in terms if m.exp_q == qmin]
        if len(anchors) > 1:
            bad = " and ".join(
                LaurentPoly({m: terms[m]}).dumps() for m in sorted(anchors, reverse=True)
            )
            raise ValueError(
                f"series_expand: denominator not expandable, minimal q-exponent shared by {bad}"
            )
        u = anchors[0]
        cu = terms[u]
        e_terms = {}
        for m, c in terms.items():
            if m == u:
                continue
            e_terms[Monomial(m.exp_q - u.exp_q, m.exp_t - u.exp_t)] = -c / cu
        E = LaurentPoly(e_terms)
        P = self.num.mul_term(Fraction(1) / cu, u.inv())
        if E.is_zero():
            return P.truncate_q(order)
        delta = min(m.exp_q for m in E.terms())
        assert delta > 0
        bound = order - min(m.exp_q for m in P.terms())
        acc = LaurentPoly.one()
        power = LaurentPoly.one()
        k = 0
        while (k + 1) * delta <= bound:
            power = (power * E).truncate_q(bound)
            if power.is_zero():
                break
            acc = acc + power
            k += 1
        return (P * acc).truncate_q(order)

    # -- serialization -----------------------------------------------------

    def dumps(self) -> str:
        if self.den.is_one():
            return self.num.dumps()
        return f"({self.num.dumps()})/({self.den.dumps()})"

    @classmethod
    def loads(cls, s: str) -> "Scalar":
        s = s.strip()
        if s.startswith("("):
            depth = 0
            for i, ch in enumerate(s):
                if ch == "(":
                    depth += 1
                elif ch == ")":
                    depth -= 1
                    if depth == 0:
                        if s[i + 1 : i + 3] == "/(" and s.endswith(")"):
                            return cls(
                                LaurentPoly.loads(s[1:i]),
                                LaurentPoly.loads(s[i + 3 : -1]),
                            )
                        break
        return cls(LaurentPoly.loads(s))

    def __str__(self) -> str:
        return self.dumps()

    def __repr__(self) -> str:
        return f"Scalar({self.dumps()!r})"


# ---------------------------------------------------------------------------
# coordinate frames and convenience constructors
# ---------------------------------------------------------------------------


def change_coordinates(x: Scalar, direction: str) -> Scalar:
    """Reinterpret exponents between the (q1, q2) and (q, t) frames.

    ``"q1q2_to_qt"`` reads stored exponent pairs (a, b) as q1^a q2^b and
    returns the same value written in (q, t): q1 = q*t, q2 = q*t^(-1), so
    (a, b) -> (a+b, a-b).  ``"qt_to_q1q2"`` is the inverse half-integer map
    (a, b) -> ((a+b)/2, (a-b)/2).  Both are ring isomorphisms and exact
    round-trip inverses.
    """
    if direction == "q1q2_to_qt":
        f = lambda m: Monomial(_ex(m.exp_q + m.exp_t), _ex(m.exp_q - m.exp_t))
    elif direction == "qt_to_q1q2":
        f = lambda m: Monomial(
            _ex(Fraction(m.exp_q + m.exp_t, 2)), _ex(Fraction(m.exp_q - m.exp_t, 2))
        )
    else:
        raise ValueError("direction must be 'q1q2_to_qt' or 'qt_to_q1q2'")
    return Scalar(x.num.map_exponents(f), x.den.map_exponents(f))


def monomial(coeff, exp_q=0, exp_t=0) -> Scalar:
    return Scalar.from_laurent(LaurentPoly.term(coeff, exp_q, exp_t))


def q(k=1) -> Scalar:
    return monomial(1, _ex(k), 0)


def t(k=1) -> Scalar:
    return monomial(1, 0, _ex(k))


def q1(k=1) -> Scalar:
    """The torus weight q1 = q*t, raised to the k-th power."""
    k = _ex(k)
    return monomial(1, k, k)


def q2(k=1) -> Scalar:
    """The torus weight q2 = q*t^(-1), raised to the k-th power."""
    k = _ex(k)
    return monomial(1, k, -k)


def one() -> Scalar:
    return monomial(1)


def zero() -> Scalar:
    return Scalar(LaurentPoly())


def rational(c) -> Scalar:
    return monomial(_fr(c))
