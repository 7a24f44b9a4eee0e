"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Each test prints its verdict through capsys.disabled() so the line shows up
in normal pytest runs.  Criterion 3 fails by design: the six-vector R^4
fixture does not actually pin down all six cross products (three of its rows
plus a fourth are linearly dependent), so the stated round-trip behavior is
mathematically unattainable for this frame.  The test measures everything
honestly and reports the failure rather than weakening the check.
"""
import time

import numpy as np

from framekit import (
    FIXTURE_MATRICES,
    Frame,
    SolutionKind,
    apply_invertible,
    build_lifted,
    complement_property,
    cp_failure_pairs,
    does_phase_retrieval,
    does_weak_phaseless,
    fixture_frame,
    fixture_names,
    frame_bounds,
    is_full_spark,
    kernel_pair_search,
    measure,
    minimality_scan,
    r4_counterexample,
    random_frame,
    reconstruct,
    weak_pr_verdict,
    weakly_same_phase,
)


def announce(capsys, num: int, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\nACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {detail}")


def best_of(fn, repeats: int = 5) -> float:
    fn()  # warm-up
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def test_acceptance_01_r2_cross_product_identity(capsys):
    """{(1,1),(1,-1)}: subtracting the two squared measurements isolates
    4*x0*x1 exactly; Proven verdict, no complement property; < 1 ms."""

    def bundle():
        f = Frame(FIXTURE_MATRICES["r2-weak"])
        ls = build_lifted(f)
        w = ls.recovery_weights(0, 1)
        v = weak_pr_verdict(f)
        cp, _ = complement_property(f)
        return f, ls, w, v, cp

    f, ls, w, verdict, cp = bundle()
    weight_err = float(np.max(np.abs(w - np.array([0.25, -0.25]))))
    selector_err = float(np.max(np.abs(w @ ls.coeff_matrix - np.array([0.0, 1.0, 0.0]))))
    elapsed = best_of(bundle)

    ok = (
        weight_err <= 1e-10
        and selector_err <= 1e-10
        and verdict.status == "Proven"
        and cp is False
        and elapsed < 1e-3
    )
    announce(
        capsys,
        1,
        ok,
        f"weights (0.25, -0.25) within {weight_err:.1e}; verdict {verdict.status}; "
        f"complement property {cp}; {elapsed * 1e3:.3f} ms",
    )
    assert weight_err <= 1e-10
    assert selector_err <= 1e-10
    assert verdict.status == "Proven"
    assert cp is False
    assert elapsed < 1e-3


def test_acceptance_02_r3_equal_norm_tight_weak_signs(capsys):
    """Four vectors in R^3: tight with bounds (4,4); all three off-diagonal
    products determined; (1,2,0) and (2,1,0) measure identically and
    reconstruct as WeakSigns; no weak phaseless reconstruction; < 10 ms."""

    def bundle():
        f = fixture_frame("r3-example")
        a, b = frame_bounds(f)
        ls = build_lifted(f)
        det = [ls.is_determined(j, k) for j, k in [(0, 1), (0, 2), (1, 2)]]
        mx = measure(f, [1.0, 2.0, 0.0])
        my = measure(f, [2.0, 1.0, 0.0])
        sol = reconstruct(f, mx, lifted=ls)
        wpl = does_weak_phaseless(f)
        v = weak_pr_verdict(f, grid=2048)
        return f, (a, b), det, mx, my, sol, wpl, v

    _, (a, b), det, mx, my, sol, wpl, verdict = bundle()
    bounds_err = max(abs(a - 4.0), abs(b - 4.0))
    elapsed = best_of(bundle)

    ok = (
        bounds_err <= 1e-10
        and all(det)
        and np.array_equal(mx, my)
        and sol.kind is SolutionKind.WEAK_SIGNS
        and wpl is False
        and verdict.status == "Proven"
        and elapsed < 1e-2
    )
    announce(
        capsys,
        2,
        ok,
        f"bounds (4,4) within {bounds_err:.1e}; off-diagonals determined {all(det)}; "
        f"equal measurements {np.array_equal(mx, my)}; kind {sol.kind.value}; "
        f"weak phaseless {wpl}; {elapsed * 1e3:.3f} ms",
    )
    assert bounds_err <= 1e-10
    assert all(det)
    assert np.array_equal(mx, my)
    assert sol.kind is SolutionKind.WEAK_SIGNS
    assert wpl is False
    assert elapsed < 1e-2


def test_acceptance_03_r4_all_products_and_roundtrip(capsys):
    """Six vectors in R^4: the criterion expects all six cross products
    determined and 100 full-support round trips returning +/-x within 1e-6.

    This fails, and must fail: rows {0,1,3,4} of the fixture are linearly
    dependent (row0 = row1 + row3 + row4), so the lift has rank 6 < 9 and
    only the three products (0,2), (1,2), (2,3) are pinned down.  An exact
    equal-measurement pair with different product signs exists — see
    r4_counterexample() — so no algorithm can recover +/-x here.  The
    no-phase-retrieval sub-check and the runtime budget do hold."""
    f = fixture_frame("r4-example")
    ls = build_lifted(f)
    pairs = [(j, k) for j in range(4) for k in range(j + 1, 4)]
    determined = [p for p in pairs if ls.is_determined(*p)]

    rng = np.random.default_rng(314)
    t0 = time.perf_counter()
    exact = 0
    for _ in range(100):
        x = rng.uniform(0.5, 2.0, size=4) * rng.choice([-1.0, 1.0], size=4)
        sol = reconstruct(f, measure(f, x), lifted=ls)
        if sol.kind is SolutionKind.FULL:
            err = min(
                np.max(np.abs(sol.representative - x)),
                np.max(np.abs(sol.representative + x)),
            )
            exact += err <= 1e-6
    elapsed = time.perf_counter() - t0
    dpr = does_phase_retrieval(f)

    ok = len(determined) == 6 and exact == 100 and dpr is False and elapsed < 0.1
    announce(
        capsys,
        3,
        ok,
        f"only {len(determined)} of 6 cross products determined {determined} "
        f"(rows {{0,1,3,4}} are linearly dependent, lift rank {ls.rank} over 10 columns); "
        f"{exact}/100 round trips returned +/-x; phase retrieval {dpr} (correctly False); "
        f"{elapsed * 1e3:.1f} ms. An exact equal-measurement pair with flipped product "
        f"signs exists, so the expected behavior is unattainable for this frame",
    )
    assert dpr is False
    assert elapsed < 0.1
    assert len(determined) == 6, (
        f"frame determines only {determined}; rows 0,1,3,4 are dependent so the "
        f"lift cannot pin all six products"
    )
    assert exact == 100


def test_acceptance_04_norm_retrieval_failure(capsys):
    """x = (1,1,-1,1), y = (1,1,1,1): x+y and x-y measure identically yet
    have norms 12 and 4 — weak phase retrieval without norm retrieval."""
    f = fixture_frame("norm-retrieval-remark")
    x = np.array([1.0, 1.0, -1.0, 1.0])
    y = np.array([1.0, 1.0, 1.0, 1.0])
    mp = measure(f, x + y)
    mm = measure(f, x - y)
    np_ = float((x + y) @ (x + y))
    nm = float((x - y) @ (x - y))

    ok = bool(np.array_equal(mp, mm)) and np_ == 12.0 and nm == 4.0
    announce(
        capsys,
        4,
        ok,
        f"measure(x+y) == measure(x-y) exactly: {np.array_equal(mp, mm)}; "
        f"norms^2 {np_:g} vs {nm:g}",
    )
    assert np.array_equal(mp, mm)
    assert np_ == 12.0 and nm == 4.0


def test_acceptance_05_minimality_scan(capsys):
    """n = 2m-3 vectors never certify: 200 seeded frames per m in {2,3,4},
    each Disproven or refuted by an explicit pair; zero survivors; < 30 s."""
    t0 = time.perf_counter()
    reports = [minimality_scan(m, trials=200, rng_seed=0, grid=512) for m in (2, 3, 4)]
    elapsed = time.perf_counter() - t0

    survivors = sum(len(r["survivors"]) for r in reports)
    ok = survivors == 0 and elapsed < 30.0
    announce(
        capsys,
        5,
        ok,
        f"600 trials, {survivors} survivors "
        f"(disproven {[r['disproven'] for r in reports]}); {elapsed:.2f} s",
    )
    assert survivors == 0
    assert elapsed < 30.0


def test_acceptance_06_minimal_count_needs_full_spark(capsys):
    """At n = 2m-2, every Proven verdict must come with full spark: 200
    seeded random frames plus the two Proven fixtures; zero violations; < 30 s."""
    t0 = time.perf_counter()
    proven = 0
    violations = 0
    for i in range(200):
        m = 2 + i % 3
        f = random_frame(2 * m - 2, m, 1000 + i)
        v = weak_pr_verdict(f, grid=256, seed=0)
        if v.status == "Proven":
            proven += 1
            if not is_full_spark(f):
                violations += 1
    # the Proven fixtures make the implication non-vacuous
    for name in ("r2-weak", "r3-example"):
        f = fixture_frame(name)
        assert weak_pr_verdict(f, grid=256).status == "Proven"
        proven += 1
        if not is_full_spark(f):
            violations += 1
    elapsed = time.perf_counter() - t0

    ok = violations == 0 and elapsed < 30.0
    announce(
        capsys,
        6,
        ok,
        f"202 frames at n = 2m-2, {proven} Proven, {violations} full-spark violations; "
        f"{elapsed:.2f} s",
    )
    assert violations == 0
    assert elapsed < 30.0


def test_acceptance_07_weak_phaseless_equals_phaseless(capsys):
    """does_weak_phaseless agrees with does_phase_retrieval on 500 random
    frames (m <= 5, n in [m, 2m+2]); zero disagreements."""
    rng = np.random.default_rng(42)
    t0 = time.perf_counter()
    disagreements = 0
    for i in range(500):
        m = int(rng.integers(2, 6))
        n = int(rng.integers(m, 2 * m + 3))
        f = random_frame(n, m, 5000 + i)
        if does_weak_phaseless(f) != does_phase_retrieval(f):
            disagreements += 1
    elapsed = time.perf_counter() - t0

    ok = disagreements == 0
    announce(capsys, 7, ok, f"500 frames, {disagreements} disagreements; {elapsed:.2f} s")
    assert disagreements == 0


def test_acceptance_08_invertible_operator_breaks_weak_pr(capsys):
    """Mapping {(1,1),(1,-1)} onto the standard basis flips the verdict from
    Proven to Disproven with the pair (1,1)/(1,-1); meanwhile 100 random
    invertible operators on a phase-retrieval frame preserve that property."""
    f = fixture_frame("r2-weak")
    T = np.array([[0.5, 0.5], [0.5, -0.5]])
    g = apply_invertible(f, T)
    np.testing.assert_allclose(g.vectors, np.eye(2), atol=1e-12)

    before = weak_pr_verdict(f).status
    after = weak_pr_verdict(g)
    x, y = after.counterexample
    u = np.array([1.0, 1.0]) / np.sqrt(2.0)
    v = np.array([1.0, -1.0]) / np.sqrt(2.0)

    def dir_err(a, w):
        a = a / np.linalg.norm(a)
        return min(np.linalg.norm(a - w), np.linalg.norm(a + w))

    # the pair {(1,1), (1,-1)} is unordered: accept either assignment
    pair_err = min(max(dir_err(x, u), dir_err(y, v)), max(dir_err(x, v), dir_err(y, u)))

    base = random_frame(5, 3, 100)  # verified CP frame
    assert does_phase_retrieval(base)
    rng = np.random.default_rng(88)
    preserved = 0
    for _ in range(100):
        while True:
            T3 = rng.standard_normal((3, 3))
            if abs(np.linalg.det(T3)) > 1e-3:
                break
        preserved += does_phase_retrieval(apply_invertible(base, T3))

    ok = (
        before == "Proven"
        and after.status == "Disproven"
        and after.evidence_kind == "CounterexamplePair"
        and pair_err <= 1e-9
        and preserved == 100
    )
    announce(
        capsys,
        8,
        ok,
        f"verdict {before} -> {after.status} ({after.evidence_kind}), pair along "
        f"(1,1)/(1,-1) within {pair_err:.1e}; phase retrieval preserved by "
        f"{preserved}/100 invertible operators",
    )
    assert before == "Proven"
    assert (after.status, after.evidence_kind) == ("Disproven", "CounterexamplePair")
    assert pair_err <= 1e-9
    assert preserved == 100


def test_acceptance_09_orthogonal_overlap_fuzz(capsys):
    """1000 random orthogonal pairs sharing at least two support coordinates
    all fail weakly_same_phase; pairs built from the Proven fixtures' CP
    witnesses are disjointly supported within 1e-8."""
    rng = np.random.default_rng(4242)
    checked = 0
    failures = 0
    while checked < 1000:
        m = int(rng.integers(2, 7))
        x = rng.standard_normal(m)
        y = rng.standard_normal(m)
        y -= (x @ y) / (x @ x) * x
        common = (np.abs(x) > 1e-6) & (np.abs(y) > 1e-6)
        if common.sum() < 2:
            continue
        checked += 1
        if weakly_same_phase(x, y):
            failures += 1

    overlap_violations = 0
    for name in ("r2-weak", "r3-example"):
        f = fixture_frame(name)
        _, witness = complement_property(f)
        for pair in cp_failure_pairs(f, witness, samples=8, rng_seed=0):
            common = (np.abs(pair.x) > 1e-8) & (np.abs(pair.y) > 1e-8)
            if common.any():
                overlap_violations += 1

    ok = failures == 0 and overlap_violations == 0
    announce(
        capsys,
        9,
        ok,
        f"1000/1000 orthogonal overlapping pairs fail the phase test; "
        f"{overlap_violations} support overlaps in fixture-derived pairs",
    )
    assert failures == 0
    assert overlap_violations == 0


def test_acceptance_10_oracle_verdict_cross_check(capsys):
    """On every fixture, the kernel search and the verdict never contradict:
    no frame is both Proven and refuted by an equal-measurement pair."""
    contradictions = 0
    rows = []
    for name in fixture_names():
        f = fixture_frame(name)
        v = weak_pr_verdict(f, grid=4096, seed=0)
        pair = kernel_pair_search(f, grid=4096, rng_seed=0)
        if v.status == "Proven" and pair is not None:
            contradictions += 1
        rows.append(f"{name}:{v.status}{'+pair' if pair is not None else ''}")

    # the disproven R^4 fixture has an exact hand-checkable pair
    pair = r4_counterexample()
    assert weak_pr_verdict(fixture_frame("r4-example")).status == "Disproven"
    assert not weakly_same_phase(pair.x, pair.y)

    ok = contradictions == 0
    announce(capsys, 10, ok, f"{contradictions} contradictions ({', '.join(rows)})")
    assert contradictions == 0
