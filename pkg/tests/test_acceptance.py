"""Acceptance gate: thirteen pinned checks with fixed seeds and wall-clock
budgets.

Each test prints one report line such as

    [05] completed squares commute: PASS (11.84s, limit 30s)

(visible under ``pytest -s`` and in failure output).  A criterion fails when
the property breaks or when its budget is exceeded; seeds are frozen so every
run examines the same sample.
"""

import random
import time

from oracle_helpers import exhaustive_iso_search

from monocat.almost_split import (ArSequence, ar_sequence, tau,
                                  verify_right_almost_split)
from monocat.category import (MonMorphism, MonObject, cokernel, direct_sum,
                              identity_morphism, rank_one)
from monocat.checks import (suite_factor, suite_inv, suite_nullity,
                            suite_periodic, suite_sigma, suite_tau, suite_tr1,
                            suite_tr2, suite_tr3, suite_tr4)
from monocat.homotopy import is_iso_in_homotopy, stable_hom
from monocat.linalg import (MatS, diag_pi, reduce_mat,
                            solve_sandwich_congruence)
from monocat.rings import RingCtx
from monocat.sampling import random_morphism, random_object, random_scalar
from monocat.stable import check_fully_faithful, stable_hom_R_bruteforce


def report(num: int, label: str, ok: bool, elapsed: float, limit: float,
           detail: str = ""):
    mark = "PASS" if ok and elapsed < limit else "FAIL"
    print(f"[{num:02d}] {label}: {mark} ({elapsed:.2f}s, limit {limit:.0f}s)")
    assert ok, f"criterion {num} ({label}) failed" + (f": {detail}" if detail else "")
    assert elapsed < limit, \
        f"criterion {num} ({label}) took {elapsed:.2f}s, budget {limit:.0f}s"


def test_criterion_01_partner_laws():
    start = time.monotonic()
    res = suite_sigma(seed=101, iters=500, max_size=4, max_t=4,
                      primes=(2, 3), allow_poly=False)
    elapsed = time.monotonic() - start
    report(1, "partner identities on 500 objects",
           res.ok and res.total == 500, elapsed, 10.0, res.summary())


def test_criterion_02_cone_of_identity():
    start = time.monotonic()
    res = suite_tr1(seed=102, iters=200, max_size=3, max_t=3)
    elapsed = time.monotonic() - start
    report(2, "cone of the identity is projective",
           res.ok and res.total == 200, elapsed, 10.0, res.summary())


def test_criterion_03_triangle_nullity():
    start = time.monotonic()
    res = suite_nullity(seed=103, iters=200, max_size=3, max_t=3)
    elapsed = time.monotonic() - start
    report(3, "consecutive triangle composites are null",
           res.ok and res.total == 200, elapsed, 30.0, res.summary())


def test_criterion_04_rotation_cone():
    start = time.monotonic()
    res = suite_tr2(seed=104, iters=100, max_size=3, max_t=3)
    elapsed = time.monotonic() - start
    report(4, "cone of the inclusion decomposes as shift plus projective",
           res.ok and res.total == 100, elapsed, 30.0, res.summary())


def test_criterion_05_square_completion():
    start = time.monotonic()
    res = suite_tr3(seed=105, iters=100, max_size=3, max_t=3)
    elapsed = time.monotonic() - start
    report(5, "completed squares commute",
           res.ok and res.total == 100, elapsed, 30.0, res.summary())


def test_criterion_06_octahedra():
    start = time.monotonic()
    res = suite_tr4(seed=106, iters=50, max_size=2, max_t=3)
    elapsed = time.monotonic() - start
    report(6, "octahedron data passes its postconditions",
           res.ok and res.total == 50, elapsed, 60.0, res.summary())


def test_criterion_07_stable_hom_fully_faithful():
    start = time.monotonic()
    ok = True
    first_bad = ""
    for t in (2, 3):
        lines, good = check_fully_faithful(RingCtx.int_local(2, t), t)
        if not good and not first_bad:
            first_bad = next(ln for ln in lines if ln.endswith("FAIL"))
        ok = ok and good
    # spot value: the stable endomorphisms of multiplication by 2 at t = 2
    # form one cyclic factor of length 1
    f = rank_one(RingCtx.int_local(2, 2), 1)
    if stable_hom(f, f).lengths != (1,):
        ok = False
        first_bad = first_bad or "spot endomorphism value"
    elapsed = time.monotonic() - start
    report(7, "stable hom matches the module-side oracle on indecomposables",
           ok, elapsed, 60.0, first_bad)


def test_criterion_08_two_periodic_resolutions():
    start = time.monotonic()
    res = suite_periodic(seed=108, iters=50, max_size=2, max_t=3,
                         primes=(2,), allow_poly=False)
    elapsed = time.monotonic() - start
    report(8, "emitted two-periodic complexes are exact",
           res.ok and res.total == 50, elapsed, 60.0, res.summary())


def test_criterion_09_projective_factorization():
    start = time.monotonic()
    res = suite_factor(seed=109, iters=100, max_size=3, max_t=3)
    elapsed = time.monotonic() - start
    report(9, "null morphisms factor through projectives",
           res.ok and res.total == 100, elapsed, 10.0, res.summary())


def test_criterion_10_nullity_is_shift_invariant():
    start = time.monotonic()
    res = suite_inv(seed=110, iters=200, max_size=3, max_t=3)
    elapsed = time.monotonic() - start
    report(10, "nullity decision agrees across partner and shift",
           res.ok and res.total == 200, elapsed, 30.0, res.summary())


def _flip_off_diagonal(middle: MonObject) -> MonObject:
    m = middle.mat
    flipped = MatS(middle.ctx, 2, 2,
                   (m.at(0, 0), -m.at(0, 1), m.at(1, 0), m.at(1, 1)))
    return MonObject(middle.ctx, flipped)


def test_criterion_11_almost_split_sequences():
    start = time.monotonic()
    ok = True
    detail = ""
    for t in (2, 3):
        ctx = RingCtx.int_local(2, t)
        for s in range(1, t):
            f = rank_one(ctx, s)
            if tau(f, 0) != f:
                ok, detail = False, f"translate moved s={s} t={t}"
                continue
            seq = ar_sequence(f)
            lines, good = verify_right_almost_split(seq)
            if not (good and lines[-1] == f"ARSS {s} {t} PASS"):
                ok, detail = False, f"verifier rejected s={s} t={t}"

            # negative control: sign-flipped middle must be caught
            bad = ArSequence(seq.tau_f, _flip_off_diagonal(seq.middle),
                             seq.end, seq.theta, seq.g)
            bad_lines, bad_ok = verify_right_almost_split(bad)
            if bad_ok or not bad_lines[0].startswith("STRUCT"):
                ok, detail = False, f"corrupted middle passed at s={s} t={t}"

            # negative control: a split sequence must be caught
            middle = direct_sum(f, f)
            col = MatS(ctx, 2, 1, (ctx.one(), ctx.zero()))
            row = MatS(ctx, 1, 2, (ctx.zero(), ctx.one()))
            split = ArSequence(f, middle, f,
                               MonMorphism(f, middle, col, col),
                               MonMorphism(middle, f, row, row))
            split_lines, split_ok = verify_right_almost_split(split)
            if split_ok or split_lines[0] != "STRUCT g is a split epimorphism FAIL":
                ok, detail = False, f"split sequence passed at s={s} t={t}"
    elapsed = time.monotonic() - start
    report(11, "almost split sequences verify, controls are rejected",
           ok, elapsed, 120.0, detail)


def test_criterion_12_translate_squared():
    start = time.monotonic()
    res = suite_tau(max_t=4)
    elapsed = time.monotonic() - start
    report(12, "translate squared fixes every decomposition class",
           res.ok and res.total == 12, elapsed, 5.0, res.summary())


def _stable_hom_mismatches() -> list:
    bad = []
    rng = random.Random(413)
    for t in (1, 2, 3):
        ctx = RingCtx.int_local(2, t)
        for _ in range(8):
            f = random_object(ctx, rng, 2)
            g = random_object(ctx, rng, 2)
            closed = tuple(sorted(stable_hom(f, g).lengths))
            brute = tuple(sorted(
                stable_hom_R_bruteforce(cokernel(f), cokernel(g)).lengths))
            if closed != brute:
                bad.append(f"hom {f.svals}->{g.svals} t={t}: "
                           f"{closed} vs {brute}")
    return bad


def _sandwich_mismatches() -> list:
    bad = []
    for t in (1, 2, 3):
        ctx = RingCtx.int_local(2, t)
        zero = ctx.reduce_mod_omega(ctx.zero())
        lifts = [ctx.lift(r) for r in ctx.residue_elements()]

        def cell_solvable(exponent, target):
            factor = ctx.pi_pow(exponent)
            return any(ctx.reduce_mod_omega(factor * x - target) == zero
                       for x in lifts)

        # every 1x1 instance
        for dl in range(t + 1):
            for dr in range(t + 1):
                for b_scalar in lifts:
                    b = MatS(ctx, 1, 1, (b_scalar,))
                    got = solve_sandwich_congruence([dl], [dr], b, ctx)
                    if (got is not None) != cell_solvable(dl + dr, b_scalar):
                        bad.append(f"1x1 t={t} dl={dl} dr={dr} b={b_scalar}")
                    elif got is not None:
                        lhs = diag_pi(ctx, [dl]) @ got @ diag_pi(ctx, [dr])
                        if reduce_mat(lhs) != reduce_mat(b):
                            bad.append(f"bad witness t={t} dl={dl} dr={dr}")

        # seeded 2x2 instances with arbitrary scalars
        rng = random.Random(709 + t)
        for _ in range(12):
            dl = [rng.randrange(t + 1) for _ in range(2)]
            dr = [rng.randrange(t + 1) for _ in range(2)]
            b = MatS(ctx, 2, 2,
                     tuple(random_scalar(ctx, rng) for _ in range(4)))
            got = solve_sandwich_congruence(dl, dr, b, ctx)
            want = all(cell_solvable(dl[j] + dr[i], b.at(j, i))
                       for j in range(2) for i in range(2))
            if (got is not None) != want:
                bad.append(f"2x2 t={t} dl={dl} dr={dr}")
            elif got is not None:
                lhs = diag_pi(ctx, dl) @ got @ diag_pi(ctx, dr)
                if reduce_mat(lhs) != reduce_mat(b):
                    bad.append(f"bad 2x2 witness t={t} dl={dl} dr={dr}")
    return bad


def _iso_mismatches() -> list:
    bad = []
    outcomes = set()
    for t, samples in ((1, 6), (2, 6), (3, 3)):
        ctx = RingCtx.int_local(2, t)
        rng = random.Random(900 + t)
        cases = []
        for _ in range(samples):
            src = random_object(ctx, rng, 2)
            dst = random_object(ctx, rng, 2)
            cases.append(random_morphism(src, dst, rng))
        cases.append(identity_morphism(random_object(ctx, rng, 2)))
        for psi in cases:
            fast = is_iso_in_homotopy(psi)
            slow = exhaustive_iso_search(psi)
            outcomes.add(slow)
            if fast != slow:
                bad.append(f"iso t={t} {psi.src.svals}->{psi.dst.svals}: "
                           f"cone says {fast}, search says {slow}")
    if outcomes != {True, False}:
        bad.append(f"iso sample is one-sided: {outcomes}")
    return bad


def test_criterion_13_oracle_validations():
    start = time.monotonic()
    problems = (_stable_hom_mismatches() + _sandwich_mismatches()
                + _iso_mismatches())
    elapsed = time.monotonic() - start
    report(13, "closed forms agree with exhaustive search",
           not problems, elapsed, 120.0, "; ".join(problems[:5]))
