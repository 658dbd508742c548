"""Multivariate polynomials over GF(q), Buchberger's algorithm and footprint bounds.

Monomials are exponent tuples compared in graded-lex order with
t_s < ... < t_1 (total degree first, then lex with coordinate 1 most
significant).
"""

from __future__ import annotations

import heapq
import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import DomainError, ParameterError, ResourceError
from .field import FieldSpec
from .polynomial import SqFreePoly, exponent_vector, leading_monomial

Exponents = tuple[int, ...]

DEFAULT_PAIR_GUARD = 10**6


def grlex_key(a: Exponents) -> tuple[int, Exponents]:
    return sum(a), a


def grlex_compare(a: Exponents, b: Exponents) -> int:
    """-1, 0 or 1 as a is smaller, equal or larger than b."""
    if len(a) != len(b):
        raise ParameterError("exponent vectors of different length")
    ka, kb = grlex_key(tuple(a)), grlex_key(tuple(b))
    return (ka > kb) - (ka < kb)


def divides(a: Exponents, b: Exponents) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponents, b: Exponents) -> Exponents:
    return tuple(max(x, y) for x, y in zip(a, b))


class GenPoly:
    """Polynomial in ``nvars`` variables with coefficients in GF(q)."""

    __slots__ = ("field", "nvars", "terms", "_lm")

    def __init__(self, field: FieldSpec, nvars: int, terms: Mapping[Exponents, int] | None = None):
        self.field = field
        self.nvars = nvars
        self._lm = None
        self.terms: dict[Exponents, int] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(x) for x in exps)
            if len(exps) != nvars or min(exps, default=0) < 0:
                raise ParameterError(f"bad exponent vector {exps}")
            if c:
                self.terms[exps] = int(c)

    @classmethod
    def from_sqfree(cls, f: SqFreePoly) -> GenPoly:
        return cls(f.field, f.s, {exponent_vector(m, f.s): c for m, c in f.terms.items()})

    @classmethod
    def constant(cls, field: FieldSpec, nvars: int, c: int = 1) -> GenPoly:
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field: FieldSpec, nvars: int, i: int, power: int = 1) -> GenPoly:
        exps = [0] * nvars
        exps[i - 1] = power
        return cls(field, nvars, {tuple(exps): 1})

    @classmethod
    def linear(cls, field: FieldSpec, coeffs: Sequence[int]) -> GenPoly:
        n = len(coeffs)
        return cls(field, n, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    def __repr__(self) -> str:
        return f"GenPoly({genpoly_text(self)!r}, q={self.field.q})"

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, GenPoly) and self.field == other.field
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.field.q, self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def copy(self) -> GenPoly:
        return GenPoly(self.field, self.nvars, self.terms)

    @property
    def lm(self) -> Exponents:
        if self._lm is None:
            if not self.terms:
                raise DomainError("the zero polynomial has no leading monomial")
            self._lm = max(self.terms, key=grlex_key)
        return self._lm

    @property
    def lc(self) -> int:
        return self.terms[self.lm]

    @property
    def total_degree(self) -> int:
        return max(sum(e) for e in self.terms) if self.terms else -1

    def _check(self, other: GenPoly) -> None:
        if self.field != other.field or self.nvars != other.nvars:
            raise ParameterError("polynomials live in different rings")

    def __add__(self, other: GenPoly) -> GenPoly:
        self._check(other)
        out = dict(self.terms)
        add = self.field.add
        for e, c in other.terms.items():
            v = add(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return GenPoly(self.field, self.nvars, out)

    def __neg__(self) -> GenPoly:
        return self.scale(self.field.neg(1))

    def __sub__(self, other: GenPoly) -> GenPoly:
        return self + (-other)

    def scale(self, c: int) -> GenPoly:
        mul = self.field.mul
        return GenPoly(self.field, self.nvars, {e: mul(c, v) for e, v in self.terms.items()})

    def mul_term(self, exps: Exponents, c: int) -> GenPoly:
        mul = self.field.mul
        return GenPoly(self.field, self.nvars, {
            tuple(x + y for x, y in zip(e, exps)): mul(c, v) for e, v in self.terms.items()
        })

    def __mul__(self, other: GenPoly) -> GenPoly:
        self._check(other)
        F = self.field
        out: dict[Exponents, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = F.add(out.get(e, 0), F.mul(c1, c2))
        return GenPoly(F, self.nvars, out)

    def monic(self) -> GenPoly:
        return self.scale(self.field.inv(self.lc))

    def evaluate_points(self, points: np.ndarray) -> np.ndarray:
        """Values at each row of an (N, nvars) array of field elements."""
        F = self.field
        acc = np.zeros(len(points), dtype=F.dtype)
        for exps, c in self.terms.items():
            val = np.full(len(points), c, dtype=F.dtype)
            for j, k in enumerate(exps):
                for _ in range(k):
                    val = F.mul_arrays(val, points[:, j])
            acc = F.add_arrays(acc, val)
        return acc


def genpoly_text(f: GenPoly) -> str:
    """Same grammar as the square-free text form, with ``t1^3`` for powers."""
    if f.is_zero():
        return "0"
    parts = []
    for exps in sorted(f.terms, key=grlex_key, reverse=True):
        c = f.terms[exps]
        factors = [f"t{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(exps) if k]
        if c != 1 or not factors:
            factors.insert(0, str(c))
        parts.append("*".join(factors))
    return " + ".join(parts)


def torus_ideal_generators(field: FieldSpec, s: int) -> list[GenPoly]:
    """t_i^{q-1} - 1 for i = 1..s."""
    minus_one = field.neg(1)
    gens = []
    for i in range(s):
        top = tuple((field.q - 1) if j == i else 0 for j in range(s))
        gens.append(GenPoly(field, s, {top: 1, (0,) * s: minus_one}))
    return gens


def divide(f: GenPoly, divisors: Sequence[GenPoly]) -> tuple[list[GenPoly], GenPoly]:
    """Multivariate division: f = sum(q_i * g_i) + r, no term of r divisible by any LM(g_i).

    The first divisor (in list order) whose leading monomial divides the
    current leading term is used.
    """
    if any(g.is_zero() for g in divisors):
        raise ParameterError("division by the zero polynomial")
    F = f.field
    leads = [(g.lm, F.inv(g.lc)) for g in divisors]
    quotients: list[dict[Exponents, int]] = [{} for _ in divisors]
    remainder: dict[Exponents, int] = {}
    p = dict(f.terms)
    # max-heap on grlex via negated keys; entries go stale when a term cancels
    heap = [_heap_key(e) for e in p]
    heapq.heapify(heap)
    while heap:
        lm = heapq.heappop(heap)[1]
        lc = p.get(lm)
        if lc is None:
            continue
        for i, (glm, ginv) in enumerate(leads):
            if divides(glm, lm):
                shift = tuple(x - y for x, y in zip(lm, glm))
                factor = F.mul(lc, ginv)
                quotients[i][shift] = F.add(quotients[i].get(shift, 0), factor)
                neg = F.neg(factor)
                for e, c in divisors[i].terms.items():
                    key = tuple(x + y for x, y in zip(e, shift))
                    old = p.get(key)
                    v = F.add(old or 0, F.mul(neg, c))
                    if v:
                        p[key] = v
                        if old is None:
                            heapq.heappush(heap, _heap_key(key))
                    elif old is not None:
                        del p[key]
                break
        else:
            remainder[lm] = lc
            del p[lm]
    return [GenPoly(F, f.nvars, qt) for qt in quotients], GenPoly(F, f.nvars, remainder)


def _heap_key(e: Exponents):
    return (-sum(e), tuple(-x for x in e)), e


def s_polynomial(f: GenPoly, g: GenPoly) -> GenPoly:
    F = f.field
    lcm = _lcm(f.lm, g.lm)
    left = f.mul_term(tuple(a - b for a, b in zip(lcm, f.lm)), F.inv(f.lc))
    right = g.mul_term(tuple(a - b for a, b in zip(lcm, g.lm)), F.inv(g.lc))
    return left - right


def _coprime(a: Exponents, b: Exponents) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def reduce_basis(basis: Sequence[GenPoly]) -> list[GenPoly]:
    """Minimal, monic, tail-reduced basis sorted by decreasing leading monomial."""
    monic = [g.monic() for g in basis if not g.is_zero()]
    minimal: list[GenPoly] = []
    for i, g in enumerate(monic):
        redundant = any(
            divides(h.lm, g.lm) and (h.lm != g.lm or j < i)
            for j, h in enumerate(monic) if j != i
        )
        if not redundant:
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = [h for j, h in enumerate(minimal) if j != i]
        lead = GenPoly(g.field, g.nvars, {g.lm: 1})
        _, tail = divide(g - lead, others) if others else ([], g - lead)
        reduced.append(lead + tail)
    return sorted(reduced, key=lambda g: grlex_key(g.lm), reverse=True)


def buchberger(gens: Iterable[GenPoly], max_pairs: int = DEFAULT_PAIR_GUARD) -> list[GenPoly]:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are processed smallest-LCM first; pairs with coprime leading
    monomials are skipped, as are pairs made redundant by the chain
    criterion.
    """
    G = [g.monic() for g in gens if not g.is_zero()]
    if not G:
        return []
    heap: list = []
    pending: set[tuple[int, int]] = set()

    def push(i: int, j: int) -> None:
        lcm = _lcm(G[i].lm, G[j].lm)
        heapq.heappush(heap, (grlex_key(lcm), i, j))
        pending.add((i, j))

    for i, j in itertools.combinations(range(len(G)), 2):
        push(i, j)
    processed = 0
    while heap:
        _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        if _coprime(G[i].lm, G[j].lm) or _chain_redundant(G, i, j, pending):
            continue
        processed += 1
        if processed > max_pairs:
            raise ResourceError(f"Buchberger exceeded {max_pairs} S-pairs")
        _, r = divide(s_polynomial(G[i], G[j]), G)
        if not r.is_zero():
            G.append(r.monic())
            for k in range(len(G) - 1):
                push(k, len(G) - 1)
    return reduce_basis(G)


def _chain_redundant(G: Sequence[GenPoly], i: int, j: int, pending: set[tuple[int, int]]) -> bool:
    """Second criterion: some LM(g_k) divides lcm(i, j) and both (i, k), (j, k) are done."""
    lcm = _lcm(G[i].lm, G[j].lm)
    for k in range(len(G)):
        if k in (i, j) or not divides(G[k].lm, lcm):
            continue
        if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
            return True
    return False


def is_groebner_basis(basis: Sequence[GenPoly]) -> bool:
    """Every S-polynomial reduces to zero modulo ``basis``."""
    for f, g in itertools.combinations(basis, 2):
        _, r = divide(s_polynomial(f, g), basis)
        if not r.is_zero():
            return False
    return True


@dataclass
class FootprintResult:
    basis: list[GenPoly]
    size: int
    standard_monomials: list[Exponents] | None = None


def _standard_mask(leads: Sequence[Exponents], box: Sequence[int]) -> np.ndarray:
    grid = np.indices(box).reshape(len(box), -1).T
    keep = np.ones(len(grid), dtype=bool)
    for lm in leads:
        keep &= ~np.all(grid >= np.asarray(lm), axis=1)
    return grid[keep]


def footprint(basis: Sequence[GenPoly], list_limit: int = 4096) -> FootprintResult:
    """Monomials not divisible by any leading monomial of a Groebner basis.

    Raises :class:`DomainError` when the footprint is infinite, i.e. some
    variable has no pure power among the leading monomials.
    """
    basis = list(basis)
    if not basis:
        raise DomainError("footprint of the zero ideal is infinite")
    leads = [g.lm for g in basis]
    nvars = basis[0].nvars
    if any(sum(lm) == 0 for lm in leads):
        return FootprintResult(basis, 0, [])
    box = []
    for i in range(nvars):
        powers = [lm[i] for lm in leads if lm[i] > 0 and sum(lm) == lm[i]]
        if not powers:
            raise DomainError(f"no pure power of t{i + 1} among leading monomials: infinite footprint")
        box.append(min(powers))
    standard = _standard_mask(leads, box)
    listed = [tuple(int(x) for x in row) for row in standard] if len(standard) <= list_limit else None
    return FootprintResult(basis, len(standard), listed)


def footprint_size(basis: Sequence[GenPoly]) -> int:
    return footprint(basis).size


def standard_multiples_count(lm: Exponents, q: int) -> int:
    """|{M in Delta(I_X) : lm divides M}| with Delta(I_X) = exponents in [0, q-2]^s."""
    out = 1
    for a in lm:
        out *= max(q - 1 - a, 0)
    return out


def weight_lower_bound(f: SqFreePoly) -> int:
    """Footprint lower bound on the weight of f: standard monomials of I_X divisible by LM(f)."""
    q = f.field.q
    lm = exponent_vector(leading_monomial(f), f.s)
    return standard_multiples_count(lm, q)


@dataclass
class FootprintCheck:
    weight: int
    footprint: int
    bound: int
    lm_bound: int
    basis: list[GenPoly] = dc_field(repr=False)

    @property
    def holds(self) -> bool:
        return self.weight >= self.bound and self.weight >= self.lm_bound

    @property
    def equality(self) -> bool:
        return self.weight == self.bound


def footprint_weight_check(f: SqFreePoly, guard: int = 4096, max_pairs: int = DEFAULT_PAIR_GUARD) -> FootprintCheck:
    """Weight of f against (q-1)^s - |footprint(I_X + (f))| and the LM bound.

    ``guard`` caps (q-1)^s, the number of torus points evaluated.
    """
    from .torus import enumerate_torus, evaluate

    n = (f.field.q - 1) ** f.s
    if n > guard:
        raise ResourceError(f"(q-1)^s = {n} exceeds the footprint guard {guard}")
    weight = evaluate(f, enumerate_torus(f.field, f.s)).weight
    gens = torus_ideal_generators(f.field, f.s) + [GenPoly.from_sqfree(f)]
    basis = buchberger(gens, max_pairs=max_pairs)
    size = footprint_size(basis)
    return FootprintCheck(weight, size, n - size, weight_lower_bound(f), basis)
