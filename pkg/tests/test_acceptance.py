"""Acceptance gate.

One test per acceptance criterion, in order, each printing a single
pass/fail verdict line (visible with -v as the test outcome, and via the
printed line under -s or on failure). Tolerances and time budgets are the
stated ones; budgets are asserted, not aspirational.
"""

import itertools
import math
import random
import time
from fractions import Fraction

import numpy as np

from metaplectic.cocycle import (
    StructuredElement,
    Torus,
    UnramifiedCharacter,
    block_lemmas_check,
    cocycle_identity_check,
    gl2,
    global_sigma_product,
    sigma_eval,
    sigma_torus_even_reduced,
    sl2,
)
from metaplectic.errors import PreconditionError
from metaplectic.local_arith import (
    Place,
    hilbert,
    reciprocity_product,
    solvability_oracle,
    square_class_rep,
)
from metaplectic.symsq import (
    SatakeData,
    even_partition_identity_check,
    local_factors,
    partitions_at_most,
    pole_report,
    rs_factorization_check,
    schur_jt,
    schur_tableau_oracle,
    toral_q_values,
    unramified_zeta_check,
    euler_product,
)
from metaplectic.weil_index import (
    AdditiveCharacter,
    EighthRoot,
    gamma,
    gauss_shell_oracle,
    mu,
)
from metaplectic.weil_rep import (
    build_model,
    operator,
    parity_invariance_check,
    projective_multiplier,
    tensor_whittaker_check,
    whittaker_functional_exists,
)

MODELS = [(3, 1), (3, 2), (5, 1), (7, 1)]
NONRESIDUE = {3: 2, 5: 2, 7: 3, 11: 2, 13: 2}


def _verdict(num: int, label: str, ok: bool, elapsed=None, budget=None):
    status = "PASS" if ok else "FAIL"
    timing = ""
    if budget is not None:
        timing = f"  [{elapsed:.2f}s / {budget:g}s budget]"
    print(f"criterion {num:2d} [{status}] {label}{timing}")
    assert ok, f"criterion {num} failed: {label}"
    if budget is not None:
        assert elapsed < budget, f"criterion {num} over budget: {elapsed:.2f}s"


def test_criterion_01_hilbert_reciprocity():
    rng = random.Random(1)
    started = time.perf_counter()
    ok = True
    for _ in range(1000):
        a = Fraction(rng.randint(1, 50), rng.randint(1, 50)) * rng.choice((1, -1))
        b = Fraction(rng.randint(1, 50), rng.randint(1, 50)) * rng.choice((1, -1))
        if reciprocity_product(a, b) != 1:
            ok = False
            break
    elapsed = time.perf_counter() - started
    _verdict(1, "Hilbert reciprocity on 1000 seeded pairs", ok, elapsed, 1.0)


def test_criterion_02_hilbert_oracle_agreement():
    grid = (1, -1, 2, -2, 3, -3, 5, -5, 6, -6, 10, -10)
    places = [Place.finite(p) for p in (2, 3, 5, 7)] + [Place.real()]
    started = time.perf_counter()
    ok = all(
        hilbert(a, b, v) == solvability_oracle(a, b, v)
        for v in places
        for a in grid
        for b in grid
    )
    elapsed = time.perf_counter() - started
    _verdict(2, "symbol vs solvability oracle on the 144-pair grid", ok, elapsed, 5.0)


def test_criterion_03_weil_index_identities():
    started = time.perf_counter()
    ok = True
    for p in (3, 5, 7, 11, 13):
        place = Place.finite(p)
        psi = AdditiveCharacter(place)
        u = NONRESIDUE[p]
        reps = [Fraction(1), Fraction(u), Fraction(p), Fraction(u * p)]
        for a, b in itertools.product(reps, reps):
            lhs = mu(a * b, psi)
            rhs = mu(a, psi) * mu(b, psi) * hilbert(a, b, place)
            ok = ok and lhs == rhs
        for a in reps:
            # square-class dependence plus the oracle-snap residual bound
            ok = ok and gamma(psi.twist(a)) == gamma(psi.twist(a * 4))
            snapped = gamma(psi.twist(a)).value()
            raw = gauss_shell_oracle(p, a)
            ok = ok and abs(raw - snapped) < 1e-6
    real = AdditiveCharacter(Place.real())
    for a, b in itertools.product((Fraction(1), Fraction(-1)), repeat=2):
        ok = ok and mu(a * b, real) == mu(a, real) * mu(b, real) * hilbert(
            a, b, Place.real()
        )
    ok = ok and gamma(real.twist(1)) == gamma(real.twist(9))
    elapsed = time.perf_counter() - started
    _verdict(
        3,
        "Weil index multiplicativity and square-class dependence, snapped within 1e-6",
        ok,
        elapsed,
        5.0,
    )


def test_criterion_04_mu_gamma_inversion():
    ok = True
    for p in (3, 5, 7, 11, 13):
        psi = AdditiveCharacter(Place.finite(p))
        ok = ok and mu(-1, psi) * gamma(psi) * gamma(psi) == EighthRoot(0)
    real = AdditiveCharacter(Place.real())
    ok = ok and mu(-1, real) * gamma(real) * gamma(real) == EighthRoot(0)
    _verdict(4, "mu(-1) gamma^2 = 1 at every supported place", ok)


def _sample_sl2(p, N, rng):
    mats = [sl2(0, 1, -1, 0)]
    for b in (0, 1, 2):
        mats.append(sl2(1, b, 0, 1))
    units = [1, 2, -1] + ([p] if N >= 2 else [])
    for a in units:
        mats.append(sl2(a, 0, 0, Fraction(1, a)))
    mats.append(sl2(2, 1, 0, Fraction(1, 2)))
    mats.append(sl2(1, 0, rng.choice((1, 2)), 1).compose(sl2(1, 1, 0, 1)))
    return mats


def test_criterion_05_finite_weil_model():
    started = time.perf_counter()
    rng = random.Random(5)
    ok = True
    triples_done = 0
    for p, N in MODELS:
        model = build_model(p, N)
        place = Place.finite(p)
        mats = _sample_sl2(p, N, rng)

        # multipliers are signs within 1e-6 on all sampled generator pairs
        for g, h in itertools.product(mats, mats):
            try:
                c = projective_multiplier(g, h, model)
            except PreconditionError:
                continue  # composite fell off the lattice window
            ok = ok and min(abs(c - 1), abs(c + 1)) < 1e-6

        # 2-cocycle identity on seeded triples (50 per model, 200 total)
        done = 0
        attempts = 0
        while done < 50 and attempts < 2000:
            attempts += 1
            g, h, k = (rng.choice(mats) for _ in range(3))
            try:
                lhs = projective_multiplier(g, h, model) * projective_multiplier(
                    g.compose(h), k, model
                )
                rhs = projective_multiplier(g, h.compose(k), model) * projective_multiplier(
                    h, k, model
                )
            except PreconditionError:
                continue
            ok = ok and abs(lhs - rhs) < 1e-6
            done += 1
            triples_done += 1

        # torus multipliers equal the Hilbert symbol
        units = [1, 2, -1, 4] + ([p, 2 * p] if N >= 2 else [])
        for a, b in itertools.product(units, units):
            c = projective_multiplier(
                sl2(a, 0, 0, Fraction(1, a)), sl2(b, 0, 0, Fraction(1, b)), model
            )
            ok = ok and abs(c - hilbert(a, b, place)) < 1e-6

        # central scalar matches chi(a) mu(a) within 1e-9
        chi = UnramifiedCharacter(place, at_uniformizer=Fraction(1))
        for a in (1, 2, -1, 4):
            op = operator(model, ("central", a), chi_value=chi.value(a))
            want = complex(chi.value(a)) * mu(a, model.psi).value()
            ok = ok and abs(op[0, 0] - want) < 1e-9
            ok = ok and bool(np.allclose(op, op[0, 0] * np.eye(model.size), atol=1e-9))

        # Whittaker existence matches direct square-class enumeration
        classes = set()
        for k in range(1, model.size):
            x = model.point(k)
            if x != 0:
                classes.add(square_class_rep(model.psi.scale * x * x, place))
        for a in (1, 2, 3, 4, p, 2 * p, p * p, -1):
            expect = square_class_rep(Fraction(a), place) in classes
            ok = ok and whittaker_functional_exists(model, a) == expect

        # two-block tensor criterion
        u = NONRESIDUE[p]
        ok = ok and tensor_whittaker_check(model, (1, 2), (1, 2)) is True
        ok = ok and tensor_whittaker_check(model, (1, 1), (1, u)) is False
        ok = ok and tensor_whittaker_check(model, (1, u), (4, u * 9)) is True

    ok = ok and triples_done == 200
    elapsed = time.perf_counter() - started
    _verdict(
        5,
        "finite model: sign multipliers, 200-triple cocycle, torus/central/Whittaker/tensor",
        ok,
        elapsed,
        60.0,
    )


def test_criterion_06_parity():
    ok = True
    for p, N in MODELS:
        model = build_model(p, N)
        gens = [("w",), ("n", 1), ("n", 2), ("t", 2), ("t", -1), ("sign", -1)]
        for gen in gens:
            ok = ok and parity_invariance_check(model, gen)
        for gen in [("d", 1), ("central", 2)]:
            ok = ok and parity_invariance_check(model, gen, chi_value=Fraction(1))
    _verdict(6, "all generators preserve the even/odd split within 1e-9", ok)


def test_criterion_07_schur_oracle_equivalence():
    started = time.perf_counter()
    rng = random.Random(7)
    value_sets = [
        [Fraction(1), Fraction(1), Fraction(1), Fraction(1)],
        [Fraction(2), Fraction(1, 2), Fraction(3), Fraction(1, 3)],
        [Fraction(rng.randint(1, 4), rng.randint(1, 4)) for _ in range(4)],
    ]
    ok = True
    for vals in value_sets:
        for total in range(0, 9):
            for lam in partitions_at_most(total, 4):
                ok = ok and schur_jt(lam, vals) == schur_tableau_oracle(lam, vals)
    elapsed = time.perf_counter() - started
    _verdict(
        7, "Jacobi-Trudi vs tableau enumeration, all |lambda| <= 8, r <= 4", ok, elapsed, 10.0
    )


def _seeded_sats(rng, r, count, q=7):
    out = []
    while len(out) < count:
        alphas = [
            Fraction(rng.randint(1, 4), rng.randint(1, 4)) * rng.choice((1, 1, -1))
            for _ in range(r)
        ]
        chi = rng.choice([Fraction(1), Fraction(2), Fraction(3, 2)])
        out.append(SatakeData(r, alphas, q, chi_val=chi))
    return out


def test_criterion_08_identity_and_zeta_to_degree_ten():
    started = time.perf_counter()
    rng = random.Random(8)
    ok = True

    # pinned case: alphas (1,1), trivial chi; symmetric-square inverse is (1-X)^-3
    pinned = SatakeData(2, [1, 1], 7, chi_val=Fraction(1))
    inv = local_factors(pinned).sym.inverse_series(10)
    ok = ok and [inv[k] for k in range(4)] == [1, 3, 6, 10]
    ok = ok and even_partition_identity_check(pinned, degree=10)
    ok = ok and unramified_zeta_check(pinned, 10)

    for r in (2, 3, 4):
        for sat in _seeded_sats(rng, r, 5):
            ok = ok and even_partition_identity_check(sat, degree=10)
            ok = ok and unramified_zeta_check(sat, 10)
    elapsed = time.perf_counter() - started
    _verdict(
        8,
        "partition identity and zeta assembly exact to X^10, r in {2,3,4} x 5 tuples",
        ok,
        elapsed,
        10.0,
    )


def test_criterion_09_square_root_flip_invariance():
    sat = SatakeData(3, [Fraction(2), Fraction(1, 2), Fraction(3)], 5, chi_val=4)
    ok = unramified_zeta_check(sat, 8, chi_sqrt_val=2)
    ok = ok and unramified_zeta_check(sat, 8, chi_sqrt_val=-2)
    for m in range(0, 5):
        for lam in partitions_at_most(m, 2):
            doubled = tuple(2 * x for x in lam) + (0,)
            plus = toral_q_values(doubled, sat, chi_sqrt_val=2)
            minus = toral_q_values(doubled, sat, chi_sqrt_val=-2)
            ok = ok and plus == minus  # exact QPower equality, not approx
    _verdict(9, "chi^(1/2) flip leaves the zeta pipeline bit-identical", ok)


def test_criterion_10_rs_factorization():
    started = time.perf_counter()
    rng = random.Random(10)
    ok = True
    for r in range(1, 6):
        for sat in _seeded_sats(rng, r, 10):
            ok = ok and rs_factorization_check(sat)
    elapsed = time.perf_counter() - started
    _verdict(10, "rs = ext * sym exactly, r <= 5, 10 seeded tuples each", ok, elapsed, 2.0)


def test_criterion_11_pole_bookkeeping():
    rep = pole_report(3, True)
    ok = rep.normalizer_poles == {Fraction(1, 4), Fraction(3, 4)}
    ok = ok and rep.l_function_poles == {Fraction(0), Fraction(1)}
    ok = ok and rep.s_to_l_arg(Fraction(3, 4)) == 1
    empty = pole_report(3, False)
    ok = ok and empty.normalizer_poles == frozenset()
    ok = ok and empty.l_function_poles == frozenset()
    _verdict(11, "pole report reproduces {1/4, 3/4} / {0, 1} and empties", ok)


def test_criterion_12_euler_product_sanity():
    started = time.perf_counter()
    primes = [p for p in range(2, 100) if all(p % d for d in range(2, p))]
    sats = [SatakeData(1, [1], p) for p in primes]
    val = euler_product(sats, 2)
    ok = abs(val - math.pi**2 / 6) < 1e-2
    elapsed = time.perf_counter() - started
    _verdict(12, "r=1 Euler product vs zeta(2) within the tail bound", ok, elapsed, 1.0)


def test_criterion_13_cocycle_suite():
    started = time.perf_counter()
    rng = random.Random(13)
    p3 = Place.finite(3)
    ok = True

    # normalization
    e3 = StructuredElement.identity(3)
    ok = ok and sigma_eval(e3, e3, p3) == 1

    # 2-cocycle identity on exhaustive torus triples
    entries = [Fraction(1), Fraction(2), Fraction(3)]
    toruses = [
        StructuredElement.torus(a, b) for a in entries for b in entries
    ]
    for g, h, k in itertools.product(toruses, toruses, toruses):
        ok = ok and cocycle_identity_check(g, h, k, p3)

    # reduced even-subtorus rule equals the full cocycle
    p5 = Place.finite(5)
    reps = [Fraction(1), Fraction(2), Fraction(5), Fraction(10)]
    for _ in range(40):

        def te():
            pairs = []
            for _ in range(2):
                c = rng.choice(reps)
                s = Fraction(rng.randint(1, 9))
                pairs.extend([c * s * s, c])
            return StructuredElement.torus(*pairs)

        t, h = te(), te()
        ok = ok and sigma_torus_even_reduced(t, h, p5) == sigma_eval(t, h, p5)

    # center exponent formula
    for r in (2, 3, 4, 5):
        for a, b in itertools.product((2, 3, 5), repeat=2):
            za = StructuredElement.central(a, r)
            zb = StructuredElement.central(b, r)
            want = hilbert(a, b, p3) ** (r * (r - 1) // 2)
            ok = ok and sigma_eval(za, zb, p3) == want

    # unipotent triviality
    u = StructuredElement.unipotent_upper([[1, 2, 3], [0, 1, 5], [0, 0, 1]])
    v = StructuredElement.unipotent_upper([[1, 0, 7], [0, 1, 1], [0, 0, 1]])
    ok = ok and sigma_eval(u, v, p5) == 1

    # global product formula (includes the p = 2 factor)
    for _ in range(50):
        g = StructuredElement.torus(
            Fraction(rng.randint(1, 30)), Fraction(rng.randint(1, 30))
        )
        h = StructuredElement.torus(
            Fraction(rng.randint(1, 30)), Fraction(rng.randint(1, 30))
        )
        ok = ok and global_sigma_product(g, h) == 1

    # block lemmas on square-determinant payloads
    ok = ok and block_lemmas_check(
        0, 1, Torus((Fraction(4), Fraction(1))), Torus((Fraction(9), Fraction(1))), p3
    )
    ok = ok and block_lemmas_check(0, 1, sl2(0, 1, -1, 0), sl2(1, 2, 0, 1), p3)
    ok = ok and block_lemmas_check(
        0, 1, gl2(2, 0, 0, 2), Torus((Fraction(9), Fraction(4))), p3
    )
    ok = ok and block_lemmas_check(
        0, 2, Torus((Fraction(4), Fraction(1))), Torus((Fraction(9), Fraction(1))),
        p3, partition=(2, 2, 2),
    )

    elapsed = time.perf_counter() - started
    _verdict(13, "cocycle suite: all seven exact families", ok, elapsed, 10.0)
