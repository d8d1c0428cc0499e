"""Acceptance criteria 1-10.  All checks are exact; no tolerances.

Each test prints its own verdict line (visible with ``-s``) and the
conftest summary prints one PASS/FAIL line per criterion after the run.
"""
import json
import os
import random
import subprocess
import sys
from fractions import Fraction
from itertools import product

import pytest

from grasscoh.cli import main, random_class
from grasscoh.coincidence import (
    betti,
    coincidence_criteria,
    euler_real,
    lefschetz_closed_product,
    lefschetz_trace,
    nonvanishing_certificate,
    pushforward_blocks,
    weighted_sum,
)
from grasscoh.derivations import derivation_space
from grasscoh.endo import (
    classify,
    extension_nullspace,
    identity,
    is_well_defined,
    make_adams,
    make_complement,
    make_u_family,
)
from grasscoh.expr import parse_class
from grasscoh.grassring import GrassClass, RingContext, h_polynomial, jacobi_trudi, pairing_matrix, reduce, sigma
from grasscoh.linalg import RatMatrix
from grasscoh.partitions import complement
from grasscoh.productring import (
    ProductClass,
    ProductContext,
    dold_generators,
    fixed_subring_basis,
    subalgebra_span_dims,
    u_class,
)


def report(number, ok, detail=""):
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


def all_contexts(nmax):
    return [(n, k) for n in range(2, nmax + 1) for k in range(1, n)]


@pytest.mark.acceptance(1, "ring correctness, n <= 8")
def test_criterion_1_ring_correctness():
    bad = []
    for n, k in all_contexts(8):
        ctx = RingContext(n, k)
        for r in range(n - k + 1, n + 4):
            if not reduce(ctx, h_polynomial(k, r)).is_zero():
                bad.append(("relation", n, k, r))
        if [len(ctx.basis(w)) for w in range(ctx.d + 1)] != betti(n, k):
            bad.append(("betti", n, k))
        for w in range(ctx.d + 1):
            for lam in ctx.basis(w):
                if reduce(ctx, jacobi_trudi(ctx, lam)) != sigma(ctx, lam):
                    bad.append(("jt", n, k, lam))
            rows, cols = ctx.basis(w), ctx.basis(ctx.d - w)
            perm = RatMatrix([[int(b == complement(a, ctx.box)) for b in cols] for a in rows], len(cols))
            if pairing_matrix(ctx, w) != perm:
                bad.append(("duality", n, k, w))
    report(1, not bad, f"{len(all_contexts(8))} contexts, failures: {bad[:5]}")


@pytest.mark.acceptance(2, "derivation spaces vanish, n <= 8")
def test_criterion_2_derivations():
    bad, checked = [], 0
    for n in range(2, 9):
        for k in range(1, n // 2 + 1):
            ctx = RingContext(n, k)
            for drop in range(2, 2 * ctx.d + 1, 2):
                checked += 1
                if derivation_space(ctx, drop).dimension != 0:
                    bad.append((n, k, drop))
    report(2, not bad, f"{checked} (n,k,drop) systems, nonzero: {bad}")


@pytest.mark.acceptance(3, "extension nullspace vanishes, n <= 7")
def test_criterion_3_extension():
    bad, checked = [], 0
    for n, k in all_contexts(7):
        d = k * (n - k)
        for m in (2, 4, 6):
            if m > 2 * d:
                continue
            ctx = ProductContext.of(m, n, k)
            for lam in (Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 2)):
                checked += 1
                if extension_nullspace(ctx, lam).dimension != 0:
                    bad.append((m, n, k, lam))
    report(3, not bad, f"{checked} (m,n,k,lambda) systems, nonzero: {bad}")


def _random_rational(rng):
    return Fraction(rng.randint(-9, 9), rng.randint(1, 5))


def _random_grass(rng, ctx, weight):
    if weight < 0:
        return GrassClass(ctx)
    return GrassClass(ctx, {lam: _random_rational(rng) for lam in ctx.basis(weight)})


@pytest.mark.acceptance(4, "endomorphism families are well defined and classify back")
def test_criterion_4_families():
    rng = random.Random(2024)
    contexts = [(m, n, k) for m in (1, 2, 3, 4, 6) for n, k in all_contexts(6)]
    bad = []
    for _ in range(200):
        m, n, k = rng.choice(contexts)
        ctx = ProductContext.of(m, n, k)
        lam, mu = _random_rational(rng), _random_rational(rng)
        phi = make_adams(ctx, lam, mu)
        if not is_well_defined(phi).well_defined:
            bad.append(("adams", m, n, k, lam, mu))
            continue
        cls = classify(phi)
        if lam != 0 and (cls.kind, cls.lam) != ("adams", lam) and not (k == n - k == 1):
            bad.append(("adams-classify", m, n, k, lam, cls.kind))
        if mu != 0 and (cls.u_kind, cls.mu) != ("scalar", mu):
            bad.append(("adams-u", m, n, k, mu))
    # the u-family needs k <= n-k: otherwise h_r with r <= k has a linear c_r term
    u_contexts = [(m, n, k) for m, n, k in contexts if k <= n - k]
    for _ in range(200):
        m, n, k = rng.choice(u_contexts)
        ctx = ProductContext.of(m, n, k)
        inner = ctx.inner
        P = []
        for i in range(1, k + 1):
            deg = 2 * i - m
            P.append(_random_grass(rng, inner, deg // 2) if deg >= 0 and deg % 2 == 0 else GrassClass(inner))
        Q = u_class(ctx).scale(_random_rational(rng))
        phi = make_u_family(ctx, P, Q)
        if not is_well_defined(phi).well_defined:
            bad.append(("u_family", m, n, k))
        elif classify(phi).kind not in ("u_family",):
            bad.append(("u_family-classify", m, n, k, classify(phi).kind))
    for n in (2, 4, 6, 8):
        k = n // 2
        for m in (1, 2):
            ctx = ProductContext.of(m, n, k)
            for lam in (1, -1, 2, -2):
                phi = make_complement(ctx, lam, 1)
                if not is_well_defined(phi).well_defined:
                    bad.append(("complement", m, n, k, lam))
                    continue
                cls = classify(phi)
                expected = "adams" if k == 1 else "complement"
                if (cls.kind, cls.lam) != (expected, Fraction(lam)):
                    bad.append(("complement-classify", n, lam, cls.kind, cls.lam))
    report(4, not bad, f"failures: {bad[:5]}")


@pytest.mark.acceptance(5, "nonvanishing lemma certificates, n <= 10")
def test_criterion_5_lemma():
    bad = []
    for n, k in all_contexts(10):
        if (k * (n - k)) % 2:
            continue
        cert = nonvanishing_certificate(n, k)
        if not cert["no_rational_root"] or cert["euler_real"] != euler_real(n, k):
            bad.append((n, k))
    spots = (weighted_sum(4, 2, -1), weighted_sum(4, 2, 2), euler_real(6, 2))
    ok = not bad and spots == (2, 35, 3)
    report(5, ok, f"spot values {spots}, failing contexts {bad}")


GRID6 = [Fraction(-1), Fraction(1, 2), Fraction(2)]


@pytest.mark.acceptance(6, "trace equals closed form for m even")
def test_criterion_6_even_m():
    bad, checked = [], 0
    for m in (2, 4):
        for n, k in [(4, 2), (5, 2), (6, 2), (7, 3)]:
            ctx = ProductContext.of(m, n, k)
            endos = {(a, b): make_adams(ctx, a, b) for a in GRID6 for b in GRID6}
            for lam, mu, lam1, mu1 in product(GRID6, repeat=4):
                rep = lefschetz_trace(endos[(lam, mu)], endos[(lam1, mu1)])
                checked += 1
                if rep.value_untwisted != lefschetz_closed_product(m, n, k, lam, mu, lam1, mu1):
                    bad.append((m, n, k, lam, mu, lam1, mu1, "untwisted"))
                if rep.value_twisted != lefschetz_closed_product(m, n, k, lam, mu, lam1, mu1, twisted=True):
                    bad.append((m, n, k, lam, mu, lam1, mu1, "twisted"))
    ctx = ProductContext.of(2, 4, 2)
    spot_id = lefschetz_trace(identity(ctx), identity(ctx)).value_untwisted
    spot_adams = lefschetz_trace(make_adams(ctx, 2, 1), make_adams(ctx, 3, 1)).value_untwisted
    ok = not bad and spot_id == 12 and spot_adams == 494
    report(6, ok, f"{checked} pairs, spots ({spot_id}, {spot_adams}), mismatches {bad[:3]}")


@pytest.mark.acceptance(7, "m odd: L(id,id) = 0 and the convention discrepancy is reported")
def test_criterion_7_odd_m():
    ctx = ProductContext.of(3, 4, 2)
    rep_id = lefschetz_trace(identity(ctx), identity(ctx))
    lam, mu, lam1, mu1 = Fraction(2), Fraction(1), Fraction(3), Fraction(1)
    rep = lefschetz_trace(make_adams(ctx, lam, mu), make_adams(ctx, lam1, mu1))
    s = sum(b * lam ** i * lam1 ** (4 - i) for i, b in enumerate(betti(4, 2)))
    printed = lefschetz_closed_product(3, 4, 2, lam, mu, lam1, mu1)
    ok = (
        rep_id.value_untwisted == 0
        and rep.value_untwisted == (mu1 - mu) * s == 0
        and rep.unsigned_untwisted == printed == (mu1 + mu) * s
        and rep.convention_discrepancy
    )
    report(7, ok, f"L(id,id)={rep_id.value_untwisted}; literal {rep.value_untwisted} vs printed {printed}")


def _hilbert_quotient(m, b_degree, b_order, top):
    """Degreewise dims of Q[u, b]/(u^2, b^order) with |u| = m, |b| = b_degree."""
    dims = [0] * (top + 1)
    for i in range(2):
        for j in range(b_order):
            deg = i * m + j * b_degree
            if deg <= top:
                dims[deg] += 1
    return dims


@pytest.mark.acceptance(8, "fixed subring equals the algebra generated by the listed generators")
def test_criterion_8_fixed_subring():
    bad = []
    for m in (1, 2, 3, 4):
        for n, k in all_contexts(6):
            ctx = ProductContext.of(m, n, k)
            fixed = [len(fixed_subring_basis(ctx, q)) for q in range(ctx.dim + 1)]
            spanned = subalgebra_span_dims(dold_generators(ctx), ctx.dim, ctx)
            if fixed != spanned:
                bad.append((m, n, k))
    for m in (1, 3):
        ctx = ProductContext.of(m, 4, 1)
        fixed = [len(fixed_subring_basis(ctx, q)) for q in range(ctx.dim + 1)]
        if fixed != _hilbert_quotient(m, 4, (4 + 1) // 2, ctx.dim):
            bad.append(("example", m))
    report(8, not bad, f"mismatches {bad}")


@pytest.mark.acceptance(9, "pushforward block patterns on (2,5,2)")
def test_criterion_9_pushforward():
    ctx = ProductContext.of(2, 5, 2)
    inner = ctx.inner
    bad = []
    for lam, mu in [(Fraction(3), Fraction(-2)), (Fraction(1, 2), Fraction(5)), (Fraction(-1), Fraction(1))]:
        f = make_adams(ctx, lam, mu)
        for q in range(ctx.dim + 1):
            b = pushforward_blocks(f, q)
            g_expect = RatMatrix.diag([lam ** (q // 2)] * b["grass_to_grass"].rows)
            s_expect = RatMatrix.diag([mu * lam ** ((q - 2) // 2)] * b["sphere_to_sphere"].rows)
            if b["grass_to_grass"] != g_expect or b["sphere_to_sphere"] != s_expect:
                bad.append(("adams diag", lam, mu, q))
            if not (b["grass_to_sphere"].is_zero() and b["sphere_to_grass"].is_zero()):
                bad.append(("adams offdiag", lam, mu, q))
    rng = random.Random(9)
    for _ in range(5):
        P = [GrassClass(inner, {(): _random_rational(rng)}), _random_grass(rng, inner, 1)]
        f = make_u_family(ctx, P, u_class(ctx).scale(_random_rational(rng)))
        for q in range(1, ctx.dim + 1):
            b = pushforward_blocks(f, q)
            if not b["grass_to_grass"].is_zero():
                bad.append(("u_family", q))
    report(9, not bad, f"failures {bad[:5]}")


def _cli_sweep(workers):
    env = dict(os.environ, GRASSCOH_THREADS=str(workers))
    cmd = [sys.executable, "-m", "grasscoh", "lefschetz", "--sweep", "--csv",
           "--ms", "2,3", "--contexts", "4:2,5:2,6:2", "--grid=-1,1/2,2"]
    return subprocess.run(cmd, env=env, capture_output=True, text=True, check=True).stdout


@pytest.mark.acceptance(10, "CLI round trip, worked criteria examples, deterministic sweeps")
def test_criterion_10_cli(capsys):
    rng = random.Random(10)
    contexts = [RingContext(5, 2), ProductContext.of(2, 5, 2), ProductContext.of(3, 6, 3), ProductContext.of(4, 4, 2)]
    failures = 0
    for i in range(1000):
        ctx = contexts[i % len(contexts)]
        text = str(random_class(rng, ctx))
        if str(parse_class(text, ctx)) != text:
            failures += 1

    verdicts = []
    cases = [
        (["-m", "2", "-n", "7", "-k", "2", "--f", "adams(3/2,2)", "--g", "adams(1,1)"], "coincidence_guaranteed"),
        (["-m", "3", "-n", "7", "-k", "2", "--f", "adams(1,-1)", "--g", "adams(1,1)"], "not_decided"),
        (["-m", "2", "-n", "4", "-k", "2", "--f", json.dumps({"family": "u_family", "P": ["2", "s[1]"], "Q": "u"}),
          "--g", "adams(1,1)"], "not_decided"),
    ]
    for argv, expected in cases:
        status = main(["criteria", *argv])
        out = json.loads(capsys.readouterr().out)
        verdicts.append(status == 0 and out["conclusion"] == expected)

    serial = _cli_sweep(1)
    parallel = [_cli_sweep(8) for _ in range(2)]
    deterministic = all(p == serial for p in parallel) and serial.count("\n") == 1 + 2 * 3 * 81
    ok = failures == 0 and all(verdicts) and deterministic
    report(10, ok, f"round-trip failures {failures}, criteria {verdicts}, deterministic {deterministic}")
