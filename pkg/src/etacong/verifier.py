"""Numerical certification of the divisibility families.

Two independent routes are implemented: the level-by-level tower of
U_11 images (structural, matches the recurrence that proves the theorem) and
a single long generating-series expansion sliced along the progression
(fast, used for bulk verification). crosscheck_product_form ties the two
together against the naive oracle.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass

from .congruence_engine import (
    CongruenceStatement,
    lambda_seq,
    mu_seq,
    n_raw,
    statement,
)
from .partition_oracle import naive_coeffs
from .series_core import (
    EtaQuotientSpec,
    ExactIntegers,
    Mod11Power,
    QSeries,
    equal_on_common_window,
    eta_quotient,
)


class ConfigError(ValueError):
    """Verification parameters are unusable (K too small, M < 1, ...)."""


class ResourceError(RuntimeError):
    """The request would exceed the coefficient-storage budget."""


DEFAULT_GUARD_DIGITS = 6
# Hard cap on stored coefficients per series; refused before allocation.
COEFF_BUDGET = 3_000_000


@dataclass
class TowerResult:
    """The series L_0..L_r; L_r is trusted through exponent base_precision."""

    levels: list
    ring: object
    base_precision: int


@dataclass
class VerificationReport:
    """Outcome of checking one congruence statement over m in [0, M]."""

    statement: CongruenceStatement
    checked_m_range: tuple
    min_valuation: int
    capped: bool
    passed: bool
    trivial: bool
    exceeds_by: int
    elapsed: float
    K: int
    mode: str


def phi_power(lam: int, prec: int, ring) -> QSeries:
    """The lam-th power of q^5 * prod (1-q^(121n))/(1-q^n), trusted below
    prec. Leading exponent is 5*lam (negative lam gives a Laurent series)."""
    spec = EtaQuotientSpec({121: lam, 1: -lam}, include_eta_prefactor=True)
    return eta_quotient(spec, prec, ring)


def _tower_plan(c: int, d: int, r: int, N: int) -> list:
    """Precision targets per level, planned backwards from N at level r.

    Applying U_11 keeps T trusted terms iff the input has 11T - 10; the
    multiplication by the lam-th power costs its leading exponent 5*lam.
    The max with 11*T keeps every level at 11x its successor or better.
    """
    plan = [0] * (r + 1)
    plan[r] = N
    for i in range(r, 0, -1):
        lam = lambda_seq(c, d, i - 1)
        plan[i - 1] = max(11 * plan[i], 11 * plan[i] - 10 - 5 * lam)
    return plan


def build_tower(c, d, r, N, ring, budget: int = COEFF_BUDGET) -> TowerResult:
    """Iterate L_i = U_11(power(lambda_{i-1}) * L_{i-1}) from L_0 = 1 so that
    L_r is trusted through exponent N."""
    if N < 1:
        raise ConfigError("N must be at least 1")
    if r < 0:
        raise ConfigError("r must be nonnegative")
    plan = _tower_plan(c, d, r, N)
    if plan[0] > budget:
        raise ResourceError(
            f"level-0 series would need {plan[0]} coefficients "
            f"(budget {budget}); reduce r or N"
        )
    levels = [QSeries.one(ring, plan[0])]
    for i in range(1, r + 1):
        lam = lambda_seq(c, d, i - 1)
        prev = levels[-1]
        ph = phi_power(lam, 11 * plan[i] - 10 - prev.offset, ring)
        levels.append(prev.mul(ph).u_p(11))
    return TowerResult(levels, ring, N)


def crosscheck_product_form(c, d, r, N, ring=None):
    """Divide L_r by its product prefactor and compare the extracted
    progression against the naive oracle, coefficient for coefficient.

    Returns (ok, detail): detail is None on agreement, otherwise a dict
    locating the first mismatch. The product prefactor swaps the two
    exponents with the parity of r: scale 11 carries c at odd levels and d
    at even levels.
    """
    if ring is None:
        ring = ExactIntegers()
    tower = build_tower(c, d, r, N, ring)
    L = tower.levels[r]
    if r % 2 == 0:
        e11, e1 = d, c
    else:
        e11, e1 = c, d
    prod_prec = L.prec - min(L.offset, 0)
    prod = eta_quotient(EtaQuotientSpec({11: e11, 1: e1}), prod_prec, ring)
    extracted = L.mul(prod.inv())
    shift = n_raw(c, d, r)
    step = 11**r
    hi = step * (extracted.prec - 1) + shift + 1
    oracle = naive_coeffs(c, d, 11, max(hi, 1)) if hi > 0 else None
    start = min(extracted.offset, 0)
    for m in range(start, extracted.prec):
        idx = step * m + shift
        want = oracle.values[idx] if (oracle is not None and idx >= 0) else 0
        got = extracted.coeff(m)
        if got != ring.normalize(want):
            return False, {
                "m": m,
                "argument": idx,
                "extracted": got,
                "oracle": want,
            }
    return True, None


def verify_theorem(c, d, r, M, K=None, exact: bool = False) -> VerificationReport:
    """Check 11^A | p_[1^c 11^d](11^r m + n) for all m in [0, M].

    Expands the generating series once, modulo 11^K by default (exact
    integers with exact=True), slices the progression, and reports the
    minimum 11-adic valuation capped at K. Exponent-0 statements pass
    trivially without touching any series.
    """
    t0 = time.perf_counter()
    st = statement(c, d, r)
    if M < 1:
        raise ConfigError("M must be at least 1")
    if K is None:
        K = st.exponent + DEFAULT_GUARD_DIGITS
    if K < st.exponent + 1:
        raise ConfigError(
            f"K = {K} cannot certify exponent {st.exponent}; need K >= A + 1"
        )
    mode = "exact" if exact else "mod"
    if st.trivial:
        return VerificationReport(
            statement=st,
            checked_m_range=(0, M),
            min_valuation=0,
            capped=False,
            passed=True,
            trivial=True,
            exceeds_by=0,
            elapsed=time.perf_counter() - t0,
            K=K,
            mode=mode,
        )
    prec = 11**r * M + st.n_canonical + 1
    if prec > COEFF_BUDGET:
        raise ResourceError(
            f"series would need {prec} coefficients (budget {COEFF_BUDGET}); "
            "reduce r or M"
        )
    ring = ExactIntegers() if exact else Mod11Power(K)
    series = eta_quotient(EtaQuotientSpec({1: -c, 11: -d}), prec, ring)
    min_val = math.inf
    for m in range(M + 1):
        v = ring.valuation(series.coeff(11**r * m + st.n_canonical))
        if v < min_val:
            min_val = v
    capped = min_val >= K
    reported = K if capped else int(min_val)
    return VerificationReport(
        statement=st,
        checked_m_range=(0, M),
        min_valuation=reported,
        capped=capped,
        passed=reported >= st.exponent,
        trivial=False,
        exceeds_by=reported - st.exponent,
        elapsed=time.perf_counter() - t0,
        K=K,
        mode=mode,
    )


def up_identity_selftest(trials: int, seed: int = 11) -> bool:
    """Randomized check that U_11(f * g(q^11)) = g * U_11(f) on the common
    trusted window, for Laurent f and polynomial g."""
    rng = random.Random(seed)
    ring = ExactIntegers()
    for _ in range(trials):
        f_prec = rng.randrange(50, 401)
        f_offset = rng.randrange(-20, 6)
        f = QSeries(
            ring,
            f_offset,
            [rng.randrange(-9, 10) for _ in range(f_prec - f_offset)],
            f_prec,
        )
        g_deg = rng.randrange(0, 31)
        g = QSeries(ring, 0, [rng.randrange(-9, 10) for _ in range(g_deg + 1)], g_deg + 1)
        lhs = f.mul(g.dilate(11)).u_p(11)
        rhs = g.mul(f.u_p(11))
        if not equal_on_common_window(lhs, rhs):
            return False
    return True
