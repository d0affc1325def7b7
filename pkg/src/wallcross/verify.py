"""Orchestrated checks: conjecture runs, golden tables, positivity, characters.

Every public entry point returns a plain-dict Report:
    {"check": str, "params": {...}, "status": "match"|"mismatch"|"skipped",
     "witness": ..., "millis": int}
with the witness present exactly when status == "mismatch" (first differing
entry) or when a skip wants to explain itself.  Reports are JSON-ready; all
symbolic content is serialized through the canonical Scalar string form so
that byte comparison equals symbolic comparison.
"""

from __future__ import annotations

import math
import time
from fractions import Fraction

from . import fock, stable
from .linalg import mat_mul
from .partitions import content_sum, enumerate_partitions, hook_partitions
from .scalars import Scalar, monomial, one, q1, q2, zero
from .symfunc import SymFunc, s_, scale_powersums

__all__ = [
    "conjecture_check",
    "conjecture_check_all",
    "appendix_check",
    "positivity_report",
    "verma_character",
    "finite_dimensional_class",
    "cherednik_characters",
]


def _report(check, params, status, witness=None, t0=None):
    out = {
        "check": check,
        "params": params,
        "status": status,
        "millis": int((time.monotonic() - t0) * 1000) if t0 is not None else 0,
    }
    if witness is not None:
        out["witness"] = witness
    if status == "mismatch" and witness is None:
        raise AssertionError("mismatch reports must carry a witness")
    return out


def _ser_matrix(M, order):
    return {
        f"{list(nu)}|{list(la)}": str(M[i][j])
        for i, nu in enumerate(order)
        for j, la in enumerate(order)
        if M[i][j]
    }


def _ser_sym(f: SymFunc) -> str:
    f = f.to_basis("s")
    keys = sorted(f.coeffs, key=lambda la: (len(la), la))
    return "; ".join(f"s{list(la)}: {f.coeffs[la]}" for la in keys)


# ---------------------------------------------------------------------------
# main conjecture
# ---------------------------------------------------------------------------


def conjecture_check(n: int, wall) -> dict:
    """Renormalized crossing at the wall against the bar-involution matrix.

    The crossing entries are t-free scalars in the single variable q, which
    is identified with the Fock-space q; mismatch carries the first
    differing entry in row-dominance order.
    """
    t0 = time.monotonic()
    w = Fraction(wall)
    params = {"n": n, "m": f"{w.numerator}/{w.denominator}", "b": w.denominator}
    R = stable.transition_matrix(n, (w, -1), (w, 1), renormalized=True)
    order = enumerate_partitions(n)
    for row in R:
        for val in row:
            for mono in val.num.terms():
                if mono.exp_t != 0:
                    return _report(
                        "conjecture", params, "mismatch",
                        {"reason": "renormalized entry not t-free", "entry": str(val)},
                        t0,
                    )
    A = fock.bar_matrix(n, w.denominator)
    for i, nu in enumerate(order):
        for j, la in enumerate(order):
            if R[i][j] != A[i][j]:
                witness = {
                    "row": list(nu),
                    "col": list(la),
                    "crossing": str(R[i][j]),
                    "bar": str(A[i][j]),
                }
                return _report("conjecture", params, "mismatch", witness, t0)
    return _report("conjecture", params, "match", None, t0)


def conjecture_check_all(n: int) -> list:
    """One report per solver-detected wall in (0, 1)."""
    out = []
    for w in stable.candidate_walls(n, 0, 1):
        if stable.is_wall(n, w):
            out.append(conjecture_check(n, w))
    return out


# ---------------------------------------------------------------------------
# golden tables
# ---------------------------------------------------------------------------


def _a() -> Scalar:
    return q2(1) - q1(-1)


def _golden_tables() -> dict:
    """The tabulated wall matrices and Schur expansions, transcribed once.

    Keys are labels; values are (kind, expected) with kind one of
    "matrix" (dict serialization) or "sym" (string serialization).
    """
    a = _a()
    den = one() - q2(2)
    g = {}
    # n=2 cumulative matrices from slope 0
    g["n2 matrix 1/2"] = [[one(), zero()], [a, one()]]
    g["n2 matrix 3/2"] = [
        [one(), zero()],
        [a + q2(2) * q1(-1) - q2(1) * q1(-2), one()],
    ]
    # n=2 Schur expansions
    g["n2 s0_(2)"] = s_((2,)).scale(one() / den) + s_((1, 1)).scale(q2(1) / den)
    g["n2 s0_(1,1)"] = s_((2,)).scale(q2(1) / den) + s_((1, 1)).scale(one() / den)
    g["n2 s(1/2+e)_(2)"] = s_((2,)).scale(one() + q2(1) / (q1(1) * den)) + s_(
        (1, 1)
    ).scale(one() / (q1(1) * den))
    g["n2 s(1/2+e)_(1,1)"] = g["n2 s0_(1,1)"]
    g["n2 s(3/2+e)_(2)"] = s_((2,)).scale(
        one() + q2(1) * q1(-1) + q2(2) / (q1(2) * den)
    ) + s_((1, 1)).scale(q1(-1) + q2(1) / (q1(2) * den))
    g["n2 s(3/2+e)_(1,1)"] = g["n2 s0_(1,1)"]
    # n=3 cumulative matrices from slope 0
    g["n3 matrix 1/3"] = [
        [one(), zero(), zero()],
        [a, one(), zero()],
        [q1(-2) - q2(1) * q1(-1), a, one()],
    ]
    g["n3 matrix 1/2"] = [
        [one(), zero(), zero()],
        [a, one(), zero()],
        [q1(-2) - q2(1) * q1(-2) + q2(2) * q1(-1) - q2(1) * q1(-1), a, one()],
    ]
    g["n3 matrix 2/3"] = [
        [one(), zero(), zero()],
        [q2(1) - q1(-1) + q2(1) * q1(-1) - q1(-2), one(), zero()],
        [
            q2(3) - q2(2) * q1(-1) + q2(1) * q1(-3) - q2(2) * q1(-2)
            + q1(-2) - q2(1) * q1(-1),
            q2(2) - q2(1) * q1(-1) + q2(1) - q1(-1),
            one(),
        ],
    ]
    return g


def appendix_check() -> dict:
    """Byte-exact comparison of everything the tables pin down.

    Covers: n=2 matrices at 1/2 and 3/2 with the displayed factorization,
    all n=2 Schur expansion lines, and the n=3 matrices at 1/3, 1/2, 2/3
    with their factorizations into single-wall factors.
    """
    t0 = time.monotonic()
    F2 = Fraction
    g = _golden_tables()
    checks = []  # (label, got-serialized, want-serialized)

    def mat(n, m):
        return stable.transition_matrix(n, (F2(0), 1), (F2(m), 1))

    o2, o3 = enumerate_partitions(2), enumerate_partitions(3)
    checks.append(("n2 matrix 1/2", _ser_matrix(mat(2, F2(1, 2)), o2),
                   _ser_matrix(g["n2 matrix 1/2"], o2)))
    checks.append(("n2 matrix 3/2", _ser_matrix(mat(2, F2(3, 2)), o2),
                   _ser_matrix(g["n2 matrix 3/2"], o2)))
    # displayed factorization: cumulative 3/2 = (3/2 factor) * (1/2 factor)
    f12 = stable.transition_matrix(2, (F2(1, 2), -1), (F2(1, 2), 1))
    f32 = stable.transition_matrix(2, (F2(3, 2), -1), (F2(3, 2), 1))
    checks.append(("n2 factorization 3/2", _ser_matrix(mat_mul(f32, f12), o2),
                   _ser_matrix(g["n2 matrix 3/2"], o2)))

    seed2 = stable.seed_slope0(2)
    up12 = stable.stable_basis(2, (F2(1, 2), 1))
    up32 = stable.stable_basis(2, (F2(3, 2), 1))
    for label, tbl, la in [
        ("n2 s0_(2)", seed2, (2,)),
        ("n2 s0_(1,1)", seed2, (1, 1)),
        ("n2 s(1/2+e)_(2)", up12, (2,)),
        ("n2 s(1/2+e)_(1,1)", up12, (1, 1)),
        ("n2 s(3/2+e)_(2)", up32, (2,)),
        ("n2 s(3/2+e)_(1,1)", up32, (1, 1)),
    ]:
        checks.append((label, _ser_sym(stable.printed_expansion(tbl, la)),
                       _ser_sym(g[label])))

    for m in (F2(1, 3), F2(1, 2), F2(2, 3)):
        label = f"n3 matrix {m.numerator}/{m.denominator}"
        checks.append((label, _ser_matrix(mat(3, m), o3), _ser_matrix(g[label], o3)))
    # factorizations: each cumulative is the ordered product of wall factors
    factors = {
        w: stable.transition_matrix(3, (w, -1), (w, 1))
        for w in (F2(1, 3), F2(1, 2), F2(2, 3))
    }
    prod = factors[F2(1, 3)]
    for w, label in [(F2(1, 2), "n3 factorization 1/2"),
                     (F2(2, 3), "n3 factorization 2/3")]:
        prod = mat_mul(factors[w], prod)
        want = g[f"n3 matrix {w.numerator}/{w.denominator}"]
        checks.append((label, _ser_matrix(prod, o3), _ser_matrix(want, o3)))

    for label, got, want in checks:
        if got != want:
            return _report(
                "appendix", {"checks": len(checks)}, "mismatch",
                {"label": label, "got": got, "want": want}, t0,
            )
    return _report("appendix", {"checks": len(checks)}, "match", None, t0)


# ---------------------------------------------------------------------------
# positivity
# ---------------------------------------------------------------------------


def _q1q2_dict(terms: dict) -> dict:
    out = {}
    for mono, coef in terms.items():
        a = Fraction(mono.exp_q + mono.exp_t, 2)
        b = Fraction(mono.exp_q - mono.exp_t, 2)
        if a.denominator != 1 or b.denominator != 1:
            raise ValueError("fractional exponent")
        out[(int(a), int(b))] = out.get((int(a), int(b)), 0) + coef
    return {k: v for k, v in out.items() if v}


def _series_coefficients(val: Scalar, order: int) -> dict:
    """Expand a rational scalar as a (q1, q2)-power series around 0.

    The denominator must have a unique corner term dividing all others
    (true for the products of (1 - monomial) factors these coefficients
    carry); raises ValueError when it does not, which the caller reports
    as a skip.  Returns {(a, b): Fraction} for total degree a+b <= order
    relative to the smallest numerator corner.
    """
    num = _q1q2_dict(val.num.terms())
    den = _q1q2_dict(val.den.terms())
    corner = min(den, key=lambda ab: (ab[0] + ab[1], ab))
    ca, cb = corner
    if any(a < ca or b < cb for a, b in den):
        raise ValueError("denominator has no dominant corner")
    cc = den[corner]
    rest = {(a - ca, b - cb): -Fraction(v, cc) for (a, b), v in den.items()
            if (a, b) != corner}
    # 1/den = q1^-ca q2^-cb / cc * sum_j rest^j
    series = {(0, 0): Fraction(1)}
    power = {(0, 0): Fraction(1)}
    for _ in range(order):
        power = _trunc_mul(power, rest, order)
        if not power:
            break
        for k, v in power.items():
            series[k] = series.get(k, Fraction(0)) + v
    shifted_num = {(a - ca, b - cb): Fraction(v, cc) for (a, b), v in num.items()}
    out = _trunc_mul(shifted_num, series, order, shift=min_corner(shifted_num))
    return out


def min_corner(d: dict) -> tuple:
    if not d:
        return (0, 0)
    return min((a for a in d), key=lambda ab: (ab[0] + ab[1], ab))


def _trunc_mul(x: dict, y: dict, order: int, shift=(0, 0)) -> dict:
    sa, sb = shift
    out = {}
    for (a1, b1), v1 in x.items():
        for (a2, b2), v2 in y.items():
            a, b = a1 + a2, b1 + b2
            if (a - sa) + (b - sb) > order:
                continue
            k = (a, b)
            out[k] = out.get(k, Fraction(0)) + v1 * v2
    return {k: v for k, v in out.items() if v}


def positivity_report(n: int, slope, order: int = 8) -> dict:
    """Schur-positivity of the stable basis at the slope, to a series order.

    Expands every Schur coefficient of every printed basis element as a
    power series (the renormalization factor is a single monomial, so it
    cannot affect signs and is left out) and reports the first negative
    coefficient found, if any.
    """
    t0 = time.monotonic()
    m, side = slope
    params = {"n": n, "m": str(Fraction(m)), "side": side, "order": order}
    if Fraction(m) <= 0:
        return _report("positivity", params, "skipped",
                       {"reason": "positive slopes only"}, t0)
    tbl = stable.stable_basis(n, slope)
    for la in enumerate_partitions(n):
        f = stable.printed_expansion(tbl, la)
        for mu, coef in f.coeffs.items():
            try:
                series = _series_coefficients(coef, order)
            except ValueError as err:
                return _report("positivity", params, "skipped",
                               {"reason": str(err), "la": list(la),
                                "mu": list(mu)}, t0)
            for (a, b), v in series.items():
                if v < 0:
                    witness = {"la": list(la), "mu": list(mu),
                               "monomial": f"q1^{a} q2^{b}", "coefficient": str(v)}
                    return _report("positivity", params, "mismatch", witness, t0)
    return _report("positivity", params, "match", None, t0)


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------


def verma_character(m, la) -> SymFunc:
    """t^(-m c_la) (1-t) s_la[X/(1-t)], the graded standard character."""
    m = Fraction(m)
    la = tuple(la)
    t = monomial(1, 0, 1)
    f = scale_powersums(s_(la), lambda k: one() / (one() - monomial(1, 0, k)))
    pref = monomial(1, 0, -m * content_sum(la)) * (one() - t)
    return f.scale(pref).to_basis("s")


def _normalize_top(f: SymFunc) -> SymFunc:
    """Scale so the dominance-largest Schur coefficient is 1*(monomial-free).

    The class is only defined up to an overall unit, so this is a
    reporting convention: divide by the (q1, q2)-content monomial of the
    top coefficient (and by its rational content).  A genuinely
    non-monomial top coefficient like q1 + q2 survives intact; a monomial
    one becomes exactly 1.
    """
    f = f.to_basis("s")
    n = sum(next(iter(f.coeffs)))
    top = next(la for la in enumerate_partitions(n) if f.coeffs.get(la))
    coef = f.coeffs[top]
    if not coef.den.is_one():
        return f.scale(one() / coef)
    terms = coef.num.terms()
    amin = min(Fraction(m.exp_q + m.exp_t, 2) for m in terms)
    bmin = min(Fraction(m.exp_q - m.exp_t, 2) for m in terms)
    cs = sorted(terms.values())
    content = Fraction(
        math.gcd(*(c.numerator for c in cs)) if len(cs) > 1 else abs(cs[0].numerator),
        math.lcm(*(c.denominator for c in cs)) if len(cs) > 1 else cs[0].denominator,
    )
    lead = terms[min(terms, key=lambda m: (m.exp_q, m.exp_t))]
    if lead < 0:
        content = -content
    return f.scale(one() / monomial(content, amin + bmin, amin - bmin))


def finite_dimensional_class(a: int, b: int):
    """(raw, reduced) class of the finite-dimensional simple at slope a/b.

    Raw is sum over hook partitions la of b of (-q)^(-height) times the
    renormalized stable element at slope a/b + eps; reduced strips the
    overall monomial per the reporting convention.
    """
    m = Fraction(a, b)
    if m <= 0 or b < 1:
        raise ValueError("need a positive slope a/b")
    tbl = stable.stable_basis(b, (m, 1))
    total = SymFunc("s", {})
    for la in hook_partitions(b):
        h = len(la) - 1
        fac = stable.renorm_factor(la, m)
        term = stable.printed_expansion(tbl, la).scale(
            monomial((-1) ** h, -h, 0) * fac
        )
        total = total + term
    return total, _normalize_top(total)


def cherednik_characters(a: int, b: int, verma_la=None) -> dict:
    """Bundle of the characters at slope a/b for emission."""
    raw, normalized = finite_dimensional_class(a, b)
    out = {
        "finite_raw": raw,
        "finite_normalized": normalized,
    }
    if verma_la is not None:
        out["verma"] = verma_character(Fraction(a, b), verma_la)
    return out
