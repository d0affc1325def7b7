"""Stable bases of K-theory of the Hilbert schemes at rational slope points.

A slope point is (m, side) with m rational and side = +1 or -1, standing for
m + eps or m - eps.  A basis is stored as its table of fixed-point
restrictions gamma[la][mu], lower-triangular in dominance order with the
diagonal pinned to prod (q2^leg - q1^(arm+1)); the table determines the
basis and every operation here acts on tables.

Frames: the internal tables seed from c_la * s_{la'}[X/(1-q2)] (conjugate
Schur index), which is what makes them dominance-triangular; the printed
basis of the literature applies omega and a per-row scalar rho_la =
c_la/(1-q2) on top, see printed_expansion.  Transition matrices are emitted
in the printed frame, columns indexing the expanded basis element.

Wall crossing is a linear solve: the unknown unitriangular matrix B couples
rows within blocks where w*(c_la - c_mu) is an integer, and is pinned by
requiring every out-of-window t-power of the combined restrictions to
vanish on the target side of the wall.  Windows follow the degree_window
rounding rule below; the solver demands existence and uniqueness and treats
anything else as a falsified axiom, not a soft failure.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .linalg import mat_inverse, mat_mul, solve_rational
from .partitions import (
    Partition,
    arm,
    b_core,
    boxes,
    chi,
    conjugate,
    content_sum,
    dominates,
    enumerate_partitions,
    leg,
    ribbon_decomposition,
    ribbon_walk,
)
from .scalars import Monomial, Scalar, monomial, one, q1, q2, rational, zero
from .symfunc import from_restrictions, omega, restrict, restrictions, s_, scale_powersums

__all__ = [
    "StableTable",
    "seed_slope0",
    "degree_window",
    "candidate_walls",
    "cross_wall",
    "nabla_shift",
    "stable_basis",
    "renorm_factor",
    "seed_normalizer",
    "transition_matrix",
    "printed_expansion",
    "is_wall",
]


def _slope(sl) -> tuple:
    m, side = sl
    m = Fraction(m)
    if side not in (1, -1):
        raise ValueError(f"slope side must be +1 or -1, got {side!r}")
    return (m, side)


class StableTable:
    """Restriction table of a stable basis at one slope point."""

    def __init__(self, n: int, slope, gamma: dict):
        self.n = n
        self.slope = _slope(slope)
        self.gamma = gamma  # la -> {mu -> Scalar}, zeros absent

    def entry(self, la, mu) -> Scalar:
        return self.gamma.get(la, {}).get(mu, zero())

    def __eq__(self, other):
        return (
            isinstance(other, StableTable)
            and self.n == other.n
            and self.gamma == other.gamma
        )

    def __repr__(self):
        return f"StableTable(n={self.n}, slope={self.slope})"


def diagonal_value(la: Partition) -> Scalar:
    """prod over boxes of (q2^l - q1^(a+1)): the pinned diagonal restriction."""
    out = one()
    for x, y in boxes(la):
        out = out * (q2(leg(la, x, y)) - q1(arm(la, x, y) + 1))
    return out


def _phi_prime(f):
    # p_k -> p_k/(1 - q2^k), the X/(1-q2) plethysm on power sums
    return scale_powersums(f, lambda k: one() / (one() - q2(k)))


_NORMALIZER_CACHE: dict = {}


def seed_normalizer(la: Partition) -> Scalar:
    """The monomial c_la making the seed restriction at la equal the diagonal."""
    la = tuple(la)
    c = _NORMALIZER_CACHE.get(la)
    if c is None:
        base = restrict(_phi_prime(s_(conjugate(la))), la)
        if not base:
            raise ArithmeticError(f"seed restriction vanishes at {la}")
        c = diagonal_value(la) / base
        if not c.is_term():
            raise ArithmeticError(f"seed normalization at {la} is not a monomial: {c}")
        _NORMALIZER_CACHE[la] = c
    return c


def t_degree_range(x: Scalar) -> tuple:
    assert x.is_laurent() and x, "t-range needs a nonzero Laurent entry"
    es = [m.exp_t for m in x.num.terms()]
    return (min(es), max(es))


def degree_window(n: int, la, mu, slope) -> tuple:
    """Allowed closed t-degree range [lower, upper] for gamma_la^mu.

    Rule: raw bounds are the t-range of the restricted diagonal gamma_mu^mu,
    shifted by (c_la - c_mu) + m*(c_mu - c_la); non-integer ends round
    inward, integer ends stay except that the side sign makes one boundary
    strict: lower bumps up when side*dc > 0, upper bumps down when
    side*dc < 0.  At mu = la this returns the diagonal range itself, both
    inequalities collapsing to equalities.

    The window has the same width as the t-range of gamma_mu^mu.  That is
    load-bearing: it is what pins each B entry of a wall crossing to a
    single t-degree (the difference of two in-window rows, minus smaller
    corrections, is a t-homogeneous multiple of the mu-diagonal), which in
    turn is what makes block-triangularity automatic and the crossing
    solvable with a zero-dimensional solution space.
    """
    m, side = _slope(slope)
    dc = content_sum(mu) - content_sum(la)
    d_min, d_max = t_degree_range(diagonal_value(mu))
    shift = -dc + m * dc
    lo, up = d_min + shift, d_max + shift
    if lo.denominator == 1:
        lower = int(lo) + (1 if side * dc > 0 else 0)
    else:
        lower = math.ceil(lo)
    if up.denominator == 1:
        upper = int(up) - (1 if side * dc < 0 else 0)
    else:
        upper = math.floor(up)
    return (lower, upper)


def _check_windows(table: StableTable, slope) -> None:
    for la, row in table.gamma.items():
        for mu, val in row.items():
            lo, hi = degree_window(table.n, la, mu, slope)
            tmin, tmax = t_degree_range(val)
            if tmin < lo or tmax > hi:
                raise ArithmeticError(
                    f"window violation at {la}|{mu}: t-range [{tmin},{tmax}] "
                    f"outside [{lo},{hi}] at slope {slope}"
                )


def seed_slope0(n: int) -> StableTable:
    """The slope-0 table: rows are c_la * s_{la'}[X/(1-q2)] restricted."""
    gamma = {}
    for la in enumerate_partitions(n):
        rows = restrictions(_phi_prime(s_(conjugate(la))), n)
        c = seed_normalizer(la)
        out = {}
        for mu, val in rows.items():
            if not val:
                continue
            if not dominates(la, mu):
                raise ArithmeticError(
                    f"seed row {la} is not dominance-triangular: hits {mu}"
                )
            val = c * val
            if not val.is_laurent():
                raise ArithmeticError(f"seed entry {la}|{mu} has a denominator: {val}")
            out[mu] = val
        gamma[la] = out
    table = StableTable(n, (Fraction(0), 1), gamma)
    _check_windows(table, table.slope)
    return table


def candidate_walls(n: int, lo, hi) -> list:
    """Rationals a/b in (lo, hi) with b <= n(n-1) dividing a content gap."""
    lo, hi = Fraction(lo), Fraction(hi)
    parts = enumerate_partitions(n)
    gaps = {
        abs(content_sum(la) - content_sum(mu))
        for i, la in enumerate(parts)
        for mu in parts[i + 1 :]
    } - {0}
    walls = set()
    for b in range(2, n * (n - 1) + 1):
        if not any(g % b == 0 for g in gaps):
            continue
        a = math.floor(lo * b) + 1
        while Fraction(a, b) < hi:
            if math.gcd(abs(a), b) == 1:
                walls.add(Fraction(a, b))
            a += 1
    return sorted(walls)


def _q_range(table: StableTable) -> tuple:
    es = [
        m.exp_q
        for row in table.gamma.values()
        for val in row.values()
        for m in val.num.terms()
    ]
    return (min(es), max(es))


def _solve_row(table, la, partners, target, qlo, qhi):
    """One unitriangular row of B: unknowns over a monomial support, kill
    equations for out-of-window t-powers of the combined row.  Returns
    (B_row dict, nullity) or None when inconsistent."""
    n = table.n
    m, _side = target
    unknowns = []  # (mu, tau, j)
    for mu in partners:
        # window width equals the mu-diagonal width, so the t-degree of
        # B_la^mu is forced: (c_la - c_mu) + m*(c_mu - c_la), an integer
        # exactly on the block
        dc = content_sum(mu) - content_sum(la)
        tau_exact = -dc + m * dc
        if tau_exact.denominator != 1:
            continue
        tau = int(tau_exact)
        for j in range(qlo, qhi + 1):
            if (j - tau) % 2 == 0:  # Laurent in q1, q2 forces this parity
                unknowns.append((mu, tau, j))
    # accumulate the symbolic row: monomial -> (const, {unknown-index: coeff})
    sym = {}  # nu -> {Monomial: [Fraction, dict]}
    for nu, val in table.gamma.get(la, {}).items():
        cell = sym.setdefault(nu, {})
        for mono, coef in val.num.terms().items():
            cell.setdefault(mono, [Fraction(0), {}])[0] += coef
    for ui, (mu, tau, j) in enumerate(unknowns):
        for nu, val in table.gamma.get(mu, {}).items():
            cell = sym.setdefault(nu, {})
            for mono, coef in val.num.terms().items():
                shifted = Monomial(mono.exp_q + j, mono.exp_t + tau)
                slot = cell.setdefault(shifted, [Fraction(0), {}])
                slot[1][ui] = slot[1].get(ui, Fraction(0)) + coef
    rows, rhs = [], []
    for nu, cell in sym.items():
        wlo, whi = degree_window(n, la, nu, target)
        for mono, (const, lin) in cell.items():
            if wlo <= mono.exp_t <= whi:
                continue
            rows.append([lin.get(ui, Fraction(0)) for ui in range(len(unknowns))])
            rhs.append(-const)
    if not unknowns:
        return ({}, 0) if all(v == 0 for v in rhs) else None
    if not rows:
        return ({}, len(unknowns))  # nothing pins the support: not unique
    part, null = solve_rational(rows, rhs)
    if part is None:
        return None
    brow = {}
    for ui, (mu, tau, j) in enumerate(unknowns):
        if part[ui]:
            brow[mu] = brow.get(mu, zero()) + monomial(part[ui], j, tau)
    return ({mu: v for mu, v in brow.items() if v}, len(null))


def cross_wall(table: StableTable, w) -> tuple:
    """Cross the wall at w to the other side; returns (new table, B).

    B is the unique unitriangular matrix over the block support
    {w*(c_la - c_mu) integral} making every combined row land in the target
    side's windows; its strict part is returned as rows la -> {mu: Scalar}.
    B = Id (all rows empty) exactly when w is not a wall.
    """
    w = Fraction(w)
    m, side = table.slope
    upward = m < w or (m == w and side == -1)
    target = (w, 1 if upward else -1)
    order = enumerate_partitions(table.n)
    qlo0, qhi0 = _q_range(table)
    b = w.denominator
    brows = {}
    for la in order:
        partners = [
            mu
            for mu in order
            if mu != la
            and dominates(la, mu)
            and (w * (content_sum(la) - content_sum(mu))).denominator == 1
        ]
        solved = None
        for attempt in range(4):  # initial support, then <= 3 widenings by 2b
            margin = 2 * b * (attempt + 1)
            solved = _solve_row(table, la, partners, target, qlo0 - margin, qhi0 + margin)
            if solved is not None and solved[1] == 0:
                break
        if solved is None:
            raise ArithmeticError(
                f"axioms unsatisfiable: no B row for {la} at wall {w} "
                f"(n={table.n}, max support exhausted)"
            )
        brow, nullity = solved
        if nullity:
            raise ArithmeticError(
                f"uniqueness failure at wall {w}, row {la}: solution space has "
                f"dimension {nullity} after widening"
            )
        brows[la] = brow
    gamma = {}
    for la in order:
        new_row = dict(table.gamma.get(la, {}))
        for mu, coef in brows[la].items():
            for nu, val in table.gamma.get(mu, {}).items():
                acc = new_row.get(nu, zero()) + coef * val
                if acc:
                    new_row[nu] = acc
                else:
                    new_row.pop(nu, None)
        for nu, val in new_row.items():
            assert val.is_laurent(), (la, nu, val)
        gamma[la] = new_row
    return StableTable(table.n, target, gamma), brows


def is_wall(n: int, w) -> bool:
    below = stable_basis(n, (Fraction(w), -1))
    _, brows = cross_wall(below, w)
    return any(brows[la] for la in brows)


def nabla_shift(table: StableTable, direction: int) -> StableTable:
    """Slope shift by +-1: rows scale entrywise by (chi_mu/chi_la)^direction."""
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    gamma = {}
    for la, row in table.gamma.items():
        cl = chi(la)
        out = {}
        for mu, val in row.items():
            ratio = chi(mu) / cl if direction == 1 else cl / chi(mu)
            out[mu] = val * ratio
        gamma[la] = out
    m, side = table.slope
    return StableTable(table.n, (m + direction, side), gamma)


_CHAMBER_CACHE: dict = {}


def stable_basis(n: int, slope) -> StableTable:
    """The table at any slope point, by seed + integer shifts + crossings."""
    m, side = _slope(slope)
    key = (n, m, side)
    hit = _CHAMBER_CACHE.get(key)
    if hit is not None:
        return hit
    if m.denominator == 1 and m != 0:
        step = 1 if m > 0 else -1
        out = nabla_shift(stable_basis(n, (m - step, side)), step)
    elif m.denominator == 1:  # m == 0: no wall at integers, sides agree
        out = seed_slope0(n)
        out = StableTable(n, (m, side), out.gamma)
    else:
        k = math.floor(m)
        if k != 0:
            step = 1 if k > 0 else -1
            out = nabla_shift(stable_basis(n, (m - step, side)), step)
        else:
            r = m  # in (0, 1)
            tbl = seed_slope0(n)
            for wall in candidate_walls(n, 0, 1):
                if wall < r or (wall == r and side == 1):
                    tbl, _ = cross_wall(tbl, wall)
            out = StableTable(n, (m, side), tbl.gamma)
    out = StableTable(n, (m, side), out.gamma)
    _CHAMBER_CACHE[key] = out
    return out


# ---------------------------------------------------------------------------
# renormalization and emission
# ---------------------------------------------------------------------------


def _ribbon_power(la, m: Fraction) -> Fraction:
    b = m.denominator
    total = Fraction(0)
    for ribbon in ribbon_decomposition(la, b):
        walk = ribbon_walk(ribbon)
        assert len(walk) == b - 1
        for j, step in enumerate(walk, start=1):
            mj = m * j
            total += mj - math.floor(mj) if step == "R" else math.ceil(mj) - mj
    return total


def renorm_factor(la, m) -> Scalar:
    """o_la^m * prod over ribbons and steps of q^(#): a single monomial.

    o_la^m is the formal m-th power of the fixed-point weight chi_la; the
    ribbon product runs over a maximal set of b-ribbons of la minus its
    b-core, walked from the northwest end.  The result must not depend on
    which maximal ribbon set is peeled; both peeling orders are compared
    and disagreement is a hard error.
    """
    m = Fraction(m)
    la = tuple(la)
    b = m.denominator
    if b == 1:
        rib = Fraction(0)
    else:
        rib = _ribbon_power(la, m)
        alt = _alt_ribbon_power(la, m)
        if alt != rib:
            raise ArithmeticError(
                f"renormalization at {la}, m={m} depends on the ribbon set: "
                f"{rib} vs {alt}"
            )
    eq = sum(x + y for x, y in boxes(la))
    et = sum(x - y for x, y in boxes(la))
    return monomial(1, m * eq + rib, m * et)


def _alt_ribbon_power(la, m: Fraction) -> Fraction:
    b = m.denominator
    total = Fraction(0)
    for ribbon in ribbon_decomposition(la, b, reverse=True):
        walk = ribbon_walk(ribbon)
        for j, step in enumerate(walk, start=1):
            mj = m * j
            total += mj - math.floor(mj) if step == "R" else math.ceil(mj) - mj
    return total


def transition_matrix(n: int, slope1, slope2, renormalized: bool = False):
    """Printed-frame matrix: column la expands basis(slope1)_la in basis(slope2).

    Entry [row nu][col la] = coefficient of the slope2 element nu.  With
    renormalized=True both slopes must sit at the same wall m and the entry
    picks up fac_la/fac_nu, turning the crossing into the renormalized form
    whose entries are conjecturally Laurent in q alone.
    """
    slope1, slope2 = _slope(slope1), _slope(slope2)
    t1, t2 = stable_basis(n, slope1), stable_basis(n, slope2)
    order = enumerate_partitions(n)
    g1 = [[t1.entry(la, mu) for mu in order] for la in order]
    g2 = [[t2.entry(la, mu) for mu in order] for la in order]
    M = mat_mul(g1, mat_inverse(g2, one(), zero()))
    cs = [seed_normalizer(la) for la in order]
    if renormalized:
        if slope1[0] != slope2[0]:
            raise ValueError("renormalized transition needs both slopes at one wall")
        facs = [renorm_factor(la, slope1[0]) for la in order]
    out = []
    for j, nu in enumerate(order):
        row = []
        for i, la in enumerate(order):
            val = M[i][j] * cs[j] / cs[i]
            if renormalized:
                val = val * facs[i] / facs[j]
            row.append(val)
        out.append(row)
    return out


def printed_expansion(table: StableTable, la):
    """The printed-frame basis element as a Schur expansion (SymFunc).

    Reconstructs the symmetric function from the row's restrictions, applies
    omega, and divides by rho_la = c_la/(1-q2).
    """
    la = tuple(la)
    f = from_restrictions(table.gamma[la])
    rho = seed_normalizer(la) / (one() - q2(1))
    return omega(f).scale(one() / rho).to_basis("s")
