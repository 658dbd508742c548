"""Brute-force ground truth: weight spectra, D_u counts, sampling, linear factors.

Randomness comes from ``numpy.random.default_rng(seed)`` (PCG64); every
sampled report records its seed.
"""

from __future__ import annotations

import io
import itertools
import math
from collections import Counter
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import ParameterError, ResourceError
from .field import FieldSpec, make_field
from .formulas import CodeParams, min_distance, ntm_weight
from .groebner import GenPoly, divide
from .polynomial import SqFreePoly, hypersimplex_basis
from .torus import TorusPointSet, generator_matrix

DEFAULT_SPECTRUM_GUARD = 2**24
MAX_SPECTRUM_GUARD = 2**30
# elements per block table in the spectrum kernel
_BLOCK_ELEMENTS = 2**22


@dataclass
class WeightDistribution:
    """A_i: number of codewords of each weight."""

    counts: dict[int, int]
    params: CodeParams | None = None
    # coefficient vectors (over the hypersimplex basis) of collected weights
    collected: dict[int, list[tuple[int, ...]]] = dc_field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, weight: int) -> int:
        return self.counts.get(weight, 0)

    def weights(self) -> list[int]:
        return sorted(w for w, c in self.counts.items() if c)

    def nonzero_weights(self) -> list[int]:
        return [w for w in self.weights() if w > 0]

    def min_nonzero_weight(self) -> int | None:
        ws = self.nonzero_weights()
        return ws[0] if ws else None

    def second_nonzero_weight(self) -> int | None:
        ws = self.nonzero_weights()
        return ws[1] if len(ws) > 1 else None

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("weight,count\n")
        for w in self.weights():
            buf.write(f"{w},{self.counts[w]}\n")
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {str(w): self.counts[w] for w in self.weights()}


def _digits(index: int, q: int, k: int) -> tuple[int, ...]:
    """Base-q digits of ``index``, least significant first."""
    out = []
    for _ in range(k):
        index, r = divmod(index, q)
        out.append(r)
    return tuple(out)


def _block_table(field: FieldSpec, rows: np.ndarray) -> np.ndarray:
    """All F_q-combinations of ``rows``; entry j has coefficient vector _digits(j)."""
    n = rows.shape[1]
    table = np.zeros((1, n), dtype=field.dtype)
    for row in rows:
        # each new entry = an earlier entry plus one scalar multiple of `row`
        parts = [table] + [field.add_arrays(table, field.mul_arrays(c, row)[None, :]) for c in range(1, field.q)]
        table = np.concatenate(parts)
    return table


def spectrum_from_matrix(
    field: FieldSpec,
    G: np.ndarray,
    guard: int = DEFAULT_SPECTRUM_GUARD,
    threads: int = 1,
    collect: Iterable[int] = (),
) -> WeightDistribution:
    """Weight distribution of the row space of ``G`` (rows assumed independent).

    Coefficient vectors are split into a high prefix (one block per prefix)
    and a low part.  The low-part table is built once, each codeword from an
    earlier one by a single scaled row addition; each block adds its
    directly evaluated prefix codeword to that table.  Histograms are merged
    by addition, so the result does not depend on ``threads``.

    Codewords whose weight is in ``collect`` have their coefficient vectors
    (row i coefficient at position i) returned in ``collected``.
    """
    k, n = G.shape
    q = field.q
    total = q**k
    if total > guard:
        raise ResourceError(f"{total} codewords exceed the spectrum guard {guard}; raise --max-codewords")
    k_low = k
    while k_low > 0 and q**k_low * n > _BLOCK_ELEMENTS:
        k_low -= 1
    low = _block_table(field, G[:k_low])
    high_rows = G[k_low:]
    k_high = k - k_low
    targets = np.array(sorted(set(collect)), dtype=np.int64)

    def run(prefix: int):
        coeffs = _digits(prefix, q, k_high)
        seed = np.zeros(n, dtype=field.dtype)
        for c, row in zip(coeffs, high_rows):
            if c:
                seed = field.add_arrays(seed, field.mul_arrays(c, row))
        block = field.add_arrays(low, seed[None, :])
        weights = np.count_nonzero(block, axis=1)
        hist = np.bincount(weights, minlength=n + 1)
        hits = []
        if targets.size:
            for j in np.flatnonzero(np.isin(weights, targets)):
                hits.append((int(weights[j]), _digits(int(j), q, k_low) + coeffs))
        return hist, hits

    prefixes = range(q**k_high)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, prefixes))
    else:
        results = [run(p) for p in prefixes]
    hist = np.zeros(n + 1, dtype=np.int64)
    collected: dict[int, list[tuple[int, ...]]] = {int(w): [] for w in targets}
    for h, hits in results:
        hist += h
        for w, vec in hits:
            collected[w].append(vec)
    counts = {int(w): int(c) for w, c in enumerate(hist) if c}
    return WeightDistribution(counts, None, collected)


def exhaustive_spectrum(
    p: CodeParams,
    guard: int = DEFAULT_SPECTRUM_GUARD,
    threads: int = 1,
    collect: Iterable[int] = (),
) -> WeightDistribution:
    """Exact weight distribution of C(d) by enumerating all q^C(s,d) codewords."""
    field = make_field(p.q, permissive=p.permissive)
    k = math.comb(p.s, p.d)
    if p.q**k > min(guard, MAX_SPECTRUM_GUARD):
        raise ResourceError(f"{p.q}^{k} codewords exceed the spectrum guard {guard}; raise --max-codewords")
    G = generator_matrix(field, p.s, p.d)
    dist = spectrum_from_matrix(field, G, guard=guard, threads=threads, collect=collect)
    dist.params = p
    return dist


def coefficients_to_poly(field: FieldSpec, s: int, d: int, coeffs: Sequence[int]) -> SqFreePoly:
    """Polynomial with coefficient ``coeffs[i]`` on the i-th hypersimplex basis monomial."""
    basis = hypersimplex_basis(s, d)
    return SqFreePoly(field, s, dict(zip(basis, coeffs)))


def naive_spectrum(p: CodeParams, guard: int = 2**16) -> WeightDistribution:
    """Reference spectrum: every codeword evaluated point by point with scalar arithmetic."""
    field = make_field(p.q, permissive=p.permissive)
    basis = hypersimplex_basis(p.s, p.d)
    if p.q ** len(basis) > guard:
        raise ResourceError("naive spectrum is only for tiny codes")
    points = list(itertools.product(field.units, repeat=p.s))
    counts: Counter[int] = Counter()
    for coeffs in itertools.product(range(p.q), repeat=len(basis)):
        weight = 0
        for point in points:
            value = 0
            for mono, c in zip(basis, coeffs):
                if c:
                    term = c
                    for v in mono:
                        term = field.mul(term, point[v - 1])
                    value = field.add(value, term)
            weight += value != 0
        counts[weight] += 1
    return WeightDistribution(dict(counts), p)


def du_bruteforce(field: FieldSpec, s: int, coefficients: Sequence[int], guard: int = 2**24) -> int:
    """Torus points where sum(a_i t_i) over the first u = len(coefficients) variables is nonzero."""
    u = len(coefficients)
    if not 1 <= u <= s:
        raise ParameterError(f"need 1 <= u <= s, got u={u}, s={s}")
    if any(not 0 < a < field.q for a in coefficients):
        raise ParameterError("coefficients must be units")
    if (field.q - 1) ** s > guard:
        raise ResourceError(f"(q-1)^s = {(field.q - 1) ** s} exceeds the guard {guard}")
    X = TorusPointSet(field, s)
    acc = np.zeros(X.n, dtype=field.dtype)
    for j, a in enumerate(coefficients):
        acc = field.add_arrays(acc, field.mul_arrays(a, X.points[:, j]))
    return int(np.count_nonzero(acc))


@dataclass
class SampleSummary:
    params: CodeParams
    count: int
    seed: int
    min_weight: int | None
    histogram: dict[int, int]   # observed weights below the threshold
    threshold: int
    below_min: int              # observations with 0 < w < delta
    in_gap: int | None          # observations with delta < w < delta_2 (None if uncovered)
    low_words: list[tuple[int, tuple[int, ...]]] = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "seed": self.seed,
            "min_weight": self.min_weight,
            "threshold": self.threshold,
            "histogram_below_threshold": {str(w): c for w, c in sorted(self.histogram.items())},
            "below_min_distance": self.below_min,
            "between_min_and_ntm": self.in_gap,
        }


def sample_codewords(
    p: CodeParams, count: int, seed: int = 0, batch: int = 4096, G: np.ndarray | None = None
) -> SampleSummary:
    """Weights of ``count`` uniformly random codewords (nonzero or not).

    Observations strictly below the next-to-minimal weight (the minimum
    distance in the uncovered band) are histogrammed and their coefficient
    vectors kept in ``low_words``.
    """
    field = make_field(p.q, permissive=p.permissive)
    delta = min_distance(p)
    delta2 = ntm_weight(p)
    threshold = delta2 if delta2 is not None else delta + 1
    if G is None:
        G = generator_matrix(field, p.s, p.d)
    k, n = G.shape
    rng = np.random.default_rng(seed)
    # multiples[i][c] = c * G[i]
    multiples = [field.mul_table[:, row] for row in G]
    hist: Counter[int] = Counter()
    low_words = []
    min_weight = None
    done = 0
    while done < count:
        m = min(batch, count - done)
        coeffs = rng.integers(0, p.q, size=(m, k))
        words = np.zeros((m, n), dtype=field.dtype)
        for i in range(k):
            words = field.add_arrays(words, multiples[i][coeffs[:, i]])
        weights = np.count_nonzero(words, axis=1)
        nonzero = weights[weights > 0]
        if nonzero.size:
            w = int(nonzero.min())
            min_weight = w if min_weight is None else min(min_weight, w)
        for j in np.flatnonzero((weights > 0) & (weights < threshold)):
            hist[int(weights[j])] += 1
            low_words.append((int(weights[j]), tuple(int(c) for c in coeffs[j])))
        done += m
    below = sum(c for w, c in hist.items() if w < delta)
    gap = None if delta2 is None else sum(c for w, c in hist.items() if delta < w < delta2)
    return SampleSummary(p, count, seed, min_weight, dict(hist), threshold, below, gap, low_words)


def projective_linear_forms(field: FieldSpec, s: int) -> Iterable[tuple[int, ...]]:
    """Coefficient vectors with first nonzero entry 1, one per projective point."""
    for lead in range(s):
        for rest in itertools.product(range(field.q), repeat=s - lead - 1):
            yield (0,) * lead + (1,) + rest


# evaluation prefilter is used when q^s is at most this
_PREFILTER_POINTS = 2**16


def linear_factor_search(
    f: SqFreePoly | GenPoly, field: FieldSpec | None = None, max_s: int = 6, max_q: int = 16
) -> list[GenPoly]:
    """All linear forms (first nonzero coefficient 1) dividing f exactly.

    Divisibility is decided by multivariate division.  For small q^s a
    candidate is first required to vanish-test: if l divides f then f is zero
    on every F_q-point of {l = 0}, so forms failing that are skipped.
    """
    g = GenPoly.from_sqfree(f) if isinstance(f, SqFreePoly) else f
    field = field or g.field
    s = g.nvars
    if s > max_s or field.q > max_q:
        raise ResourceError(f"linear factor search limited to s <= {max_s}, q <= {max_q}")
    forms = list(projective_linear_forms(field, s))
    candidates = forms
    if field.q**s <= _PREFILTER_POINTS:
        points = np.array(list(itertools.product(range(field.q), repeat=s)), dtype=field.dtype)
        nonzero_f = g.evaluate_points(points) != 0
        zero_sets = _zero_set_matrix(field, s, points)
        hits = zero_sets[:, nonzero_f].any(axis=1)
        candidates = [form for form, hit in zip(forms, hits) if not hit]
    factors = []
    for form in candidates:
        ell = GenPoly.linear(field, form)
        _, r = divide(g, [ell])
        if r.is_zero():
            factors.append(ell)
    return factors


_zero_set_cache: dict[tuple[int, int], np.ndarray] = {}


def _zero_set_matrix(field: FieldSpec, s: int, points: np.ndarray) -> np.ndarray:
    key = (field.q, s)
    if key not in _zero_set_cache:
        forms = np.array(list(projective_linear_forms(field, s)), dtype=field.dtype)
        values = np.zeros((len(forms), len(points)), dtype=field.dtype)
        for j in range(s):
            values = field.add_arrays(values, field.mul_table[forms[:, j][:, None], points[:, j][None, :]])
        _zero_set_cache[key] = values == 0
    return _zero_set_cache[key]
