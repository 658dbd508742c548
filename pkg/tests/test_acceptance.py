"""Acceptance criteria, each timed against its budget.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python tests/test_acceptance.py``; either way one PASS/FAIL line is
printed per criterion.
"""

from __future__ import annotations

import itertools
import sys
import time

import numpy as np
import pytest

from hypersimplex_codes import (
    CodeParams,
    Permutation,
    SqFreePoly,
    TorusPointSet,
    complement,
    du_bruteforce,
    du_chain_check,
    du_closed,
    enumerate_min_params,
    enumerate_ntm_params,
    equivalence_transform,
    evaluate,
    exhaustive_spectrum,
    expand_min,
    expand_ntm,
    footprint_weight_check,
    hypersimplex_basis,
    linear_factor_search,
    make_field,
    min_distance,
    min_word_count,
    ntm_weight,
    ntm_word_count,
    parse_poly,
    permute,
    point_permutation,
    recognize_min,
    recognize_ntm,
    weight_lower_bound,
)
from hypersimplex_codes.oracles import coefficients_to_poly

SEED = 2024


def random_poly(F, s, d, rng) -> SqFreePoly:
    basis = hypersimplex_basis(s, d)
    while True:
        coeffs = rng.integers(0, F.q, size=len(basis))
        if coeffs.any():
            return SqFreePoly(F, s, dict(zip(basis, coeffs.tolist())))


def exhaustive_small():
    p = CodeParams(4, 4, 3)
    dist = exhaustive_spectrum(p)
    ok = (dist[0] == 1 and dist[54] == 54 and dist[60] == 81 and dist.total == 256
          and min_distance(p) == 54 and ntm_weight(p) == 60
          and min_word_count(p) == 54 and ntm_word_count(p) == 81
          and dist.min_nonzero_weight() == 54 and dist.second_nonzero_weight() == 60)
    return ok, f"spectrum {dist.counts}"


def exhaustive_q5():
    p = CodeParams(5, 4, 3)
    dist = exhaustive_spectrum(p)
    ok = (dist[192] == 96 and dist[204] == 256 and dist.total == 625
          and min_distance(p) == 192 and ntm_weight(p) == 204)
    return ok, f"A_192={dist[192]} A_204={dist[204]} total={dist.total}"


def exhaustive_gap():
    p = CodeParams(4, 5, 3)
    dist = exhaustive_spectrum(p)
    ok = dist[108] == 405 and dist.min_nonzero_weight() == 108 and min_word_count(p) == 405
    ok &= ntm_weight(p) is None and ntm_word_count(p) is None
    return ok, (f"A_108={dist[108]}, min weight {dist.min_nonzero_weight()}; "
                f"next-to-minimal checks SKIPPED (gap); observed second weight {dist.second_nonzero_weight()} "
                f"with A={dist[dist.second_nonzero_weight()]} (data only)")


def min_family_s6():
    p, F = CodeParams(4, 6, 3), make_field(4)
    X = TorusPointSet(F, 6)
    items = list(enumerate_min_params(p, F))
    words = [evaluate(expand_min(it, 6, F), X) for it in items]
    weights = {w.weight for w in words}
    distinct = len({w.values.tobytes() for w in words})
    ok = len(items) == 405 and weights == {216} and distinct == 405
    return ok, f"{len(items)} forms, weights {sorted(weights)}, {distinct} distinct codewords"


def families_s8():
    p, F = CodeParams(4, 8, 3), make_field(4)
    X = TorusPointSet(F, 8)
    rng = np.random.default_rng(SEED)
    ntm = list(enumerate_ntm_params(p, F))
    mins = list(enumerate_min_params(p, F))
    ntm_sample = [ntm[i] for i in np.sort(rng.choice(len(ntm), 500, replace=False))]
    min_sample = [mins[i] for i in np.sort(rng.choice(len(mins), 500, replace=False))]
    ntm_w = {evaluate(expand_ntm(it, 8, F), X).weight for it in ntm_sample}
    min_w = {evaluate(expand_min(it, 8, F), X).weight for it in min_sample}
    ok = len(ntm) == 51030 and len(mins) == 11340 and ntm_w == {2160} and min_w == {1944}
    return ok, f"ntm {len(ntm)} items, sampled weights {sorted(ntm_w)}; min {len(mins)} items, sampled {sorted(min_w)}"


def du_counts():
    rng = np.random.default_rng(SEED)
    s, bad, trials = 6, 0, 0
    for q in (4, 5):
        F = make_field(q)
        for u in range(1, s + 1):
            for _ in range(5):
                coeffs = [int(F.units[i]) for i in rng.integers(0, q - 1, size=u)]
                bad += du_bruteforce(F, s, coeffs) != du_closed(q, s, u)
                trials += 1
        for k in range(1, (s - 2) // 2 + 1):
            bad += not du_chain_check(q, s, k)
    return bad == 0, f"{trials} brute-force counts and chain checks, {bad} mismatches"


def footprint_bound():
    rng = np.random.default_rng(SEED)
    F = make_field(4)
    failures, equal, total = 0, 0, 0
    for s in (3, 4):
        for _ in range(50):
            d = int(rng.integers(1, s))
            f = random_poly(F, s, d, rng)
            check = footprint_weight_check(f)
            failures += not (check.weight >= check.bound and check.weight >= weight_lower_bound(f))
            equal += check.equality
            total += 1
    return failures == 0, f"{total} polynomials, {failures} violations, equality in {equal}/{total}"


def dualities():
    F = make_field(4)
    s, d = 5, 3
    X = TorusPointSet(F, s)
    perm, scale = equivalence_transform(F, s, X)
    rng = np.random.default_rng(SEED)
    sigmas = [Permutation((rng.permutation(s) + 1).tolist()) for _ in range(10)]
    moved = [point_permutation(X, sigma.inverse()) for sigma in sigmas]
    bad = 0
    for _ in range(100):
        f = random_poly(F, s, d, rng)
        v, vc = evaluate(f, X), evaluate(complement(f), X)
        bad += not np.array_equal(v.values, F.mul_arrays(scale, vc.values[perm]))
        bad += v.weight != vc.weight
        for sigma, m in zip(sigmas, moved):
            bad += not np.array_equal(v.values, evaluate(permute(f, sigma), X).values[m])
    return bad == 0, f"100 polynomials x (complement identity, weight, 10 permutations): {bad} failures"


def recognizers():
    F = make_field(4)
    p = CodeParams(4, 4, 3)
    X = TorusPointSet(F, 4)
    bad = 0
    k = len(hypersimplex_basis(4, 3))
    for coeffs in itertools.product(range(4), repeat=k):
        if not any(coeffs):
            continue
        f = coefficients_to_poly(F, 4, 3, coeffs)
        w = evaluate(f, X).weight
        bad += (recognize_min(f, p) is not None) != (w == 54)
        bad += (recognize_ntm(f, p) is not None) != (w == 60)
    roundtrips = 0
    for it in enumerate_min_params(p, F):
        bad += recognize_min(expand_min(it, 4, F), p) != it
        roundtrips += 1
    for it in enumerate_ntm_params(p, F):
        bad += recognize_ntm(expand_ntm(it, 4, F), p) != it
        roundtrips += 1
    p6 = CodeParams(4, 6, 3)
    for it in enumerate_min_params(p6, F):
        bad += recognize_min(expand_min(it, 6, F), p6) != it
        roundtrips += 1
    return bad == 0, f"255 nonzero codewords classified, {roundtrips} roundtrips, {bad} failures"


def quartic_without_linear_factors():
    bad, weights = 0, set()
    for q in (4, 5, 7, 8, 9):
        F = make_field(q)
        X = TorusPointSet(F, 4) if q == 4 else None
        for a1, a2, a3 in itertools.product(F.units, repeat=3):
            f = parse_poly(f"t1*t2*t3 + {a1}*t1*t2*t4 + {a2}*t1*t3*t4 + {a3}*t2*t3*t4", F, 4)
            bad += bool(linear_factor_search(f))
            if X is not None:
                weights.add(evaluate(f, X).weight)
    ok = bad == 0 and weights == {60}
    return ok, f"{bad} polynomials with a linear factor; weights at q=4: {sorted(weights)}"


CRITERIA = [
    (1, "exhaustive spectrum (4,4,3)", exhaustive_small, 1.0),
    (2, "exhaustive spectrum (5,4,3)", exhaustive_q5, 1.0),
    (3, "exhaustive spectrum (4,5,3), gap regime", exhaustive_gap, 60.0),
    (4, "minimal family (4,6,3)", min_family_s6, 10.0),
    (5, "sampled families (4,8,3)", families_s8, 120.0),
    (6, "linear-form nonzero counts, s=6", du_counts, 30.0),
    (7, "footprint bound, q=4, s in {3,4}", footprint_bound, 120.0),
    (8, "complement and permutation identities (4,5,3)", dualities, 10.0),
    (9, "recognizer soundness and completeness", recognizers, 10.0),
    (10, "cubic without linear factors", quartic_without_linear_factors, 60.0),
]


def evaluate_criterion(number, title, func, budget):
    start = time.perf_counter()
    ok, detail = func()
    elapsed = time.perf_counter() - start
    passed = bool(ok) and elapsed < budget
    line = f"{'PASS' if passed else 'FAIL'} criterion {number}: {title} [{elapsed:.2f}s / {budget:.0f}s] {detail}"
    return passed, line


@pytest.mark.parametrize("number,title,func,budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, func, budget, capsys):
    passed, line = evaluate_criterion(number, title, func, budget)
    with capsys.disabled():
        print(f"\n{line}")
    assert passed, line


if __name__ == "__main__":
    results = [evaluate_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
