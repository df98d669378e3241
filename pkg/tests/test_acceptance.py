"""End-to-end acceptance gate: one check per shipped guarantee, one line each.

Every check prints an ACCEPTANCE line even under capture, so a full run gives
a compact scoreboard. A failing line means the corresponding guarantee does
not hold as stated; nothing here is weakened to force a pass.
"""

import math
import time

from etacong import (
    A,
    EtaQuotientSpec,
    ExactIntegers,
    alpha,
    alpha_table_regenerate,
    corollary_bound_check,
    crosscheck_product_form,
    eta_quotient,
    euler_p,
    mu_closed,
    mu_seq,
    n_canonical,
    n_raw,
    n_raw_closed,
    naive_coeffs,
    up_identity_selftest,
    verify_theorem,
)


def announce(capsys, num: int, name: str, ok: bool, detail: str) -> str:
    line = f"ACCEPTANCE {num} {name}: {'PASS' if ok else 'FAIL'} - {detail}"
    with capsys.disabled():
        print(line, flush=True)
    return line


def test_acceptance_1_theorem_grid(capsys):
    t0 = time.perf_counter()
    failures = []
    total = 0
    for c in range(-4, 5):
        for d in range(-4, 5):
            for r in (1, 2, 3):
                total += 1
                rep = verify_theorem(c, d, r, 30)
                if not rep.passed:
                    failures.append((c, d, r, rep.min_valuation, rep.statement.exponent))
    ok = not failures
    detail = (
        f"{total - len(failures)}/{total} statements verified with 30 terms each "
        f"({time.perf_counter() - t0:.1f} s)"
    )
    if failures:
        detail += (
            "; counterexamples (c, d, r, measured valuation, claimed exponent): "
            f"{failures[:5]}"
        )
    line = announce(capsys, 1, "theorem-grid", ok, detail)
    assert ok, line


def test_acceptance_2_known_families(capsys):
    t0 = time.perf_counter()
    problems = []

    for k in (1, 2):
        if n_canonical(1, -11, k) != 11**k - 5:
            problems.append(f"(1,-11) shift at level {k}")
        rep = verify_theorem(1, -11, k, 30)
        if not (rep.passed and rep.statement.exponent >= 1):
            problems.append(f"(1,-11) verification at level {k}")

    for k in (1, 2):
        r = 2 * k - 1
        want_n = (7 * 11**r - 5) // 12
        if n_canonical(1, -1, r) != want_n or A(1, -1, r) != k:
            problems.append(f"(1,-1) shift/exponent at level {r}")
        rep = verify_theorem(1, -1, r, 30)
        if not rep.passed:
            problems.append(f"(1,-1) verification at level {r}")

    for k in (1, 2, 3):
        want_n = (11**k + 1) // 2
        if n_canonical(1, 1, k) != want_n or A(1, 1, k) != k:
            problems.append(f"(1,1) shift/exponent at level {k}")
        rep = verify_theorem(1, 1, k, 30)
        if not rep.passed:
            problems.append(f"(1,1) verification at level {k}")

    ok = not problems
    detail = f"three closed-form families checked ({time.perf_counter() - t0:.1f} s)"
    if problems:
        detail += f"; problems: {problems}"
    line = announce(capsys, 2, "known-families", ok, detail)
    assert ok, line


def test_acceptance_3_classical_congruences(capsys):
    t0 = time.perf_counter()
    p = euler_p(2537).values
    bad_11 = [m for m in range(101) if p[11 * m + 6] % 11 != 0]
    bad_121 = [m for m in range(21) if p[121 * m + 116] % 121 != 0]
    ok = not bad_11 and not bad_121
    detail = (
        f"101 slots mod 11 and 21 slots mod 121 from 2537 partition numbers "
        f"({time.perf_counter() - t0:.1f} s)"
    )
    if not ok:
        detail += f"; failing slots mod 11: {bad_11[:5]}, mod 121: {bad_121[:5]}"
    line = announce(capsys, 3, "classical-congruences", ok, detail)
    assert ok, line


def test_acceptance_4_alpha_table_regeneration(capsys):
    _, findings = alpha_table_regenerate()
    ok = not findings
    if ok:
        detail = "all 125 embedded cells reproduced"
    else:
        cells = ", ".join(
            f"residue {f['residue']} ({f['kind']}: embedded {f['embedded']}, computed {f['computed']})"
            for f in findings
        )
        detail = f"{len(findings)} embedded cells disagree with the recomputation: {cells}"
    line = announce(capsys, 4, "alpha-table-regeneration", ok, detail)
    assert ok, line


def test_acceptance_5_exponent_growth(capsys):
    problems = []
    for r in range(1, 11):
        if A(1, 1, r) != r:
            problems.append(f"A(1,1,{r})")
    for r in range(1, 6):
        if A(1, -1, 2 * r) != r:
            problems.append(f"A(1,-1,{2 * r})")
        if A(2, 7, 2 * r) != 2 * r - 1:
            problems.append(f"A(2,7,{2 * r})")
    for args, want in [((1, 1), 2), ((1, -1), 1), ((2, 7), 2)]:
        if alpha(*args) != want:
            problems.append(f"alpha{args}")
    ok = not problems
    detail = "20 exponent values and 3 growth rates pinned"
    if problems:
        detail += f"; wrong: {problems}"
    line = announce(capsys, 5, "exponent-growth", ok, detail)
    assert ok, line


def test_acceptance_6_dual_route_consistency(capsys):
    t0 = time.perf_counter()
    problems = []

    if not up_identity_selftest(100, seed=11):
        problems.append("operator identity suite")

    for c, d in [(1, 1), (1, -1), (1, 0), (2, 7), (1, -11)]:
        for r in (1, 2):
            ok_cc, detail_cc = crosscheck_product_form(c, d, r, 30)
            if not ok_cc:
                problems.append(f"product-form crosscheck ({c},{d},{r}): {detail_cc}")

    for c in range(-20, 21):
        for d in range(-20, 21):
            v = abs(c + 11 * d)
            for r in range(1, 7):
                raw = n_raw(c, d, r)
                if raw != n_raw_closed(c, d, r):
                    problems.append(f"shift closed form ({c},{d},{r})")
                if mu_seq(c, d, r) != math.ceil(-raw / 11**r):
                    problems.append(f"order floor ({c},{d},{r})")
                if v < 11**r and mu_closed(c, d, r) != mu_seq(c, d, r):
                    problems.append(f"order closed form ({c},{d},{r})")

    ok = not problems
    detail = (
        f"operator identities, 10 product-form crosschecks, and closed forms on a "
        f"41x41x6 grid agree ({time.perf_counter() - t0:.1f} s)"
    )
    if problems:
        detail += f"; first problems: {problems[:5]}"
    line = announce(capsys, 6, "dual-route-consistency", ok, detail)
    assert ok, line


def test_acceptance_7_oracle_agreement(capsys):
    t0 = time.perf_counter()
    ring = ExactIntegers()
    N = 200
    bad = []
    for c in range(-12, 13):
        for d in range(-12, 13):
            fast = eta_quotient(EtaQuotientSpec({1: -c, 11: -d}), N, ring)
            if fast.coeff_range(0, N) != naive_coeffs(c, d, 11, N).values:
                bad.append((c, d))
    ok = not bad
    detail = f"625 coefficient sequences, 200 terms each ({time.perf_counter() - t0:.1f} s)"
    if bad:
        detail += f"; disagreeing pairs: {bad[:5]}"
    line = announce(capsys, 7, "oracle-agreement", ok, detail)
    assert ok, line


def test_acceptance_8_deviation_bound(capsys):
    t0 = time.perf_counter()
    bad = []
    checked = 0
    for c in range(-10, 11):
        for d in range(-10, 11):
            if c + 11 * d == 0:
                continue
            for r in range(1, 61):
                checked += 1
                if not corollary_bound_check(c, d, r):
                    bad.append((c, d, r))
    ok = not bad
    detail = f"{checked} deviation bounds hold ({time.perf_counter() - t0:.1f} s)"
    if bad:
        detail += f"; violations: {bad[:5]}"
    line = announce(capsys, 8, "deviation-bound", ok, detail)
    assert ok, line
