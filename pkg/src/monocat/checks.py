"""Seeded property suites shared by the command line and the test suite.

Each suite drives one construction over deterministic random instances and
counts the trials that satisfy the checked law.  A suite never stops early:
a regression surfaces as a reduced count in the summary line, never as a
crash half way through a run.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .almost_split import tau
from .category import (compose, decompose, identity_morphism,
                       partner_morphism, rank_one)
from .errors import MonocatError
from .homotopy import (complete_square, cone, cone_maps,
                       factor_through_projective, is_iso_in_homotopy,
                       null_homotopy, octahedron, standard_triangle,
                       suspend_morphism, triangle_composite_witnesses)
from .linalg import identity
from .rings import RingCtx
from .sampling import random_morphism, random_null_homotopic, random_object
from .stable import resolution_is_exact, two_periodic_resolution


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: int
    total: int

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def summary(self) -> str:
        mark = "PASS" if self.ok else "FAIL"
        return f"{self.name} {self.passed}/{self.total} {mark}"


def _draw_context(rng: random.Random, max_t: int, primes, allow_poly: bool
                  ) -> RingCtx:
    t = rng.randrange(1, max_t + 1)
    if allow_poly and rng.randrange(5) == 0:
        return RingCtx.poly_local(t, q=rng.choice(list(primes)))
    return RingCtx.int_local(rng.choice(list(primes)), t)


def _tally(name: str, iters: int, trial) -> SuiteResult:
    passed = 0
    for i in range(iters):
        try:
            good = bool(trial(i))
        except MonocatError:
            good = False
        if good:
            passed += 1
    return SuiteResult(name, passed, iters)


def suite_sigma(seed=0, iters=100, max_size=3, max_t=3, primes=(2, 3),
                allow_poly=True) -> SuiteResult:
    """Partner laws: f f_S = omega I = f_S f and the flip is involutive."""
    rng = random.Random(seed)

    def trial(i):
        ctx = _draw_context(rng, max_t, primes, allow_poly)
        f = random_object(ctx, rng, max_size)
        scaled = identity(ctx, f.n).scale(ctx.omega())
        return (f.mat @ f.partner_mat == scaled
                and f.partner_mat @ f.mat == scaled
                and f.partner().partner_mat == f.mat)

    return _tally("SIGMA", iters, trial)


def suite_tr1(seed=0, iters=100, max_size=3, max_t=3, primes=(2, 3),
              allow_poly=True) -> SuiteResult:
    """The cone of an identity morphism is projective."""
    rng = random.Random(seed)

    def trial(i):
        ctx = _draw_context(rng, max_t, primes, allow_poly)
        f = random_object(ctx, rng, max_size)
        return cone(identity_morphism(f)).is_projective()

    return _tally("TR1", iters, trial)


def suite_nullity(seed=0, iters=100, max_size=3, max_t=3, primes=(2, 3),
                  allow_poly=True) -> SuiteResult:
    """Consecutive composites in a standard triangle are null-homotopic."""
    rng = random.Random(seed)

    def trial(i):
        ctx = _draw_context(rng, max_t, primes, allow_poly)
        src = random_object(ctx, rng, max_size)
        dst = random_object(ctx, rng, max_size)
        psi = random_morphism(src, dst, rng)
        tri = standard_triangle(psi)
        return triangle_composite_witnesses(tri) is not None

    return _tally("NULLITY", iters, trial)


def suite_tr2(seed=0, iters=100, max_size=3, max_t=3, primes=(2, 3),
              allow_poly=True) -> SuiteResult:
    """cone(inclusion) decomposes as shift(src) plus a projective."""
    rng = random.Random(seed)

    def trial(i):
        ctx = _draw_context(rng, max_t, primes, allow_poly)
        src = random_object(ctx, rng, max_size)
        dst = random_object(ctx, rng, max_size)
        psi = random_morphism(src, dst, rng)
        _, inc, _ = cone_maps(psi)
        flipped = [ctx.t - s for s in src.svals]
        expected = tuple(sorted([0] * dst.n + [ctx.t] * dst.n + flipped))
        return decompose(cone(inc)) == expected

    return _tally("TR2", iters, trial)


def suite_tr3(seed=0, iters=100, max_size=3, max_t=3, primes=(2, 3),
              allow_poly=True) -> SuiteResult:
    """Homotopy-commuting squares complete to strict cone morphisms."""
    rng = random.Random(seed)

    def trial(i):
        ctx = _draw_context(rng, max_t, primes, allow_poly)
        a = random_object(ctx, rng, max_size)
        mid = random_object(ctx, rng, max_size)
        b2 = random_object(ctx, rng, max_size)
        noise, _ = random_null_homotopic(a, b2, rng)
        if i % 2 == 0:
            top = random_morphism(a, mid, rng)
            right = random_morphism(mid, b2, rng)
            left = identity_morphism(a)
            bottom = compose(right, top) + noise
        else:
            left = random_morphism(a, mid, rng)
            bottom = random_morphism(mid, b2, rng)
            top = identity_morphism(a)
            right = compose(bottom, left) + noise
        _, _, eta = complete_square(top, bottom, left, right)
        _, inc1, prj1 = cone_maps(top)
        _, inc2, prj2 = cone_maps(bottom)
        return (compose(eta, inc1) == compose(inc2, right)
                and compose(prj2, eta) == compose(suspend_morphism(left),
                                                  prj1))

    return _tally("TR3", iters, trial)


def suite_tr4(seed=0, iters=50, max_size=2, max_t=3, primes=(2, 3),
              allow_poly=True) -> SuiteResult:
    """Octahedra assemble and their comparison map is invertible."""
    rng = random.Random(seed)

    def trial(i):
        ctx = _draw_context(rng, max_t, primes, allow_poly)
        x = random_object(ctx, rng, max_size)
        y = random_object(ctx, rng, max_size)
        z = random_object(ctx, rng, max_size)
        u = random_morphism(x, y, rng)
        v = random_morphism(y, z, rng)
        data = octahedron(u, v)
        return (is_iso_in_homotopy(data.comparison)
                and triangle_composite_witnesses(data.bottom) is not None)

    return _tally("TR4", iters, trial)


def suite_inv(seed=0, iters=100, max_size=3, max_t=3, primes=(2, 3),
              allow_poly=True) -> SuiteResult:
    """Null-homotopy decisions agree for a morphism, its partner, and its
    suspension."""
    rng = random.Random(seed)

    def trial(i):
        ctx = _draw_context(rng, max_t, primes, allow_poly)
        src = random_object(ctx, rng, max_size)
        dst = random_object(ctx, rng, max_size)
        psi = random_morphism(src, dst, rng)
        base = null_homotopy(psi) is not None
        swapped = null_homotopy(partner_morphism(psi)) is not None
        shifted = null_homotopy(suspend_morphism(psi)) is not None
        return base == swapped and base == shifted

    return _tally("INV", iters, trial)


def suite_factor(seed=0, iters=100, max_size=3, max_t=3, primes=(2, 3),
                 allow_poly=True) -> SuiteResult:
    """Null-homotopic morphisms factor exactly through a projective."""
    rng = random.Random(seed)

    def trial(i):
        ctx = _draw_context(rng, max_t, primes, allow_poly)
        src = random_object(ctx, rng, max_size)
        dst = random_object(ctx, rng, max_size)
        psi, witness = random_null_homotopic(src, dst, rng)
        alpha, beta = factor_through_projective(psi, witness)
        return (alpha.dst.is_projective() and alpha.dst == beta.src
                and compose(beta, alpha) == psi)

    return _tally("FACTOR", iters, trial)


def suite_periodic(seed=0, iters=50, max_size=2, max_t=3, primes=(2, 3),
                   allow_poly=True) -> SuiteResult:
    """The emitted 2-periodic complex over R is exact, by enumeration."""
    rng = random.Random(seed)

    def trial(i):
        ctx = _draw_context(rng, max_t, primes, allow_poly)
        f = random_object(ctx, rng, max_size)
        res = two_periodic_resolution(f)
        return resolution_is_exact(res, ctx)

    return _tally("PERIODIC", iters, trial)


def suite_tau(seed=0, iters=0, max_size=0, max_t=4, primes=(2, 3),
              allow_poly=True) -> SuiteResult:
    """The translate squares to the identity for both parity branches.

    Deterministic: one trial per (t, s, parity) with 0 < s < t <= max_t.
    """
    p = list(primes)[0]
    combos = [(t, s, d)
              for t in range(2, max_t + 1)
              for s in range(1, t)
              for d in (0, 1)]
    results = iter(combos)

    def trial(i):
        t, s, d = next(results)
        f = rank_one(RingCtx.int_local(p, t), s)
        return decompose(tau(tau(f, d), d)) == decompose(f)

    return _tally("TAU", len(combos), trial)


SUITES = {
    "sigma": suite_sigma,
    "tr1": suite_tr1,
    "nullity": suite_nullity,
    "tr2": suite_tr2,
    "tr3": suite_tr3,
    "tr4": suite_tr4,
    "inv": suite_inv,
    "factor": suite_factor,
    "periodic": suite_periodic,
    "tau": suite_tau,
}


def run_suite(name: str, **kwargs) -> SuiteResult:
    return SUITES[name](**kwargs)
