"""Canonical minimal and next-to-minimal weight codeword families.

Minimal words (e = min(d, s-d) linear factors)::

    MinLow   a * prod_i (t_{b_i} + a_i t_{c_i})
    MinHigh  a * prod_i (t_{b_i} + a_i t_{c_i}) * prod_{j in tail} t_j

Next-to-minimal words (e - 1 binomials plus one four-variable block on
q1 < q2 < q3 < q4 with coefficients (a2, a3, a4))::

    NtmLow   a * prod_i (t_{b_i} + a_i t_{c_i}) * (t_q1 + a2 t_q2 + a3 t_q3 + a4 t_q4)
    NtmHigh  a * prod_i (t_{b_i} + a_i t_{c_i})
               * (t_q2 t_q3 t_q4 + a2 t_q1 t_q3 t_q4 + a3 t_q1 t_q2 t_q4 + a4 t_q1 t_q2 t_q3)
               * prod_{j in tail} t_j

with b_i < c_i, b_1 < ... < b_k, and tail the variables not used elsewhere.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .errors import ParameterError, UnsupportedRegimeError
from .field import FieldSpec
from .formulas import CodeParams, Regime, min_regime, ntm_regime
from .polynomial import (
    SqFreePoly,
    complement,
    expand_product,
    leading_monomial,
)


@dataclass(frozen=True)
class MinWordParams:
    regime: Regime
    pairs: tuple[tuple[int, int], ...]
    alphas: tuple[int, ...]
    scalar: int = 1
    tail: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "regime": str(self.regime),
            "pairs": [[b, c, a] for (b, c), a in zip(self.pairs, self.alphas)],
            "scalar": self.scalar,
        }

    @classmethod
    def from_dict(cls, obj: dict, s: int) -> MinWordParams:
        pairs = tuple((int(b), int(c)) for b, c, _ in obj["pairs"])
        alphas = tuple(int(a) for _, _, a in obj["pairs"])
        regime = Regime(obj["regime"])
        tail = _tail(s, [v for pair in pairs for v in pair]) if regime is Regime.MIN_HIGH else ()
        return cls(regime, pairs, alphas, int(obj["scalar"]), tail)


@dataclass(frozen=True)
class NtmWordParams:
    regime: Regime
    pairs: tuple[tuple[int, int], ...]
    alphas: tuple[int, ...]
    quad: tuple[int, int, int, int]
    quad_alphas: tuple[int, int, int]
    scalar: int = 1
    tail: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "regime": str(self.regime),
            "pairs": [[b, c, a] for (b, c), a in zip(self.pairs, self.alphas)],
            "quad": [*self.quad, list(self.quad_alphas)],
            "scalar": self.scalar,
        }

    @classmethod
    def from_dict(cls, obj: dict, s: int) -> NtmWordParams:
        pairs = tuple((int(b), int(c)) for b, c, _ in obj["pairs"])
        alphas = tuple(int(a) for _, _, a in obj["pairs"])
        quad = tuple(int(v) for v in obj["quad"][:4])
        quad_alphas = tuple(int(a) for a in obj["quad"][4])
        regime = Regime(obj["regime"])
        used = [v for pair in pairs for v in pair] + list(quad)
        tail = _tail(s, used) if regime is Regime.NTM_HIGH else ()
        return cls(regime, pairs, alphas, quad, quad_alphas, int(obj["scalar"]), tail)


def _tail(s: int, used: Sequence[int]) -> tuple[int, ...]:
    taken = set(used)
    return tuple(v for v in range(1, s + 1) if v not in taken)


def _check_pairs(pairs, alphas, s: int, field: FieldSpec) -> None:
    if len(pairs) != len(alphas):
        raise ParameterError("one coefficient per pair is required")
    if any(not b < c for b, c in pairs):
        raise ParameterError("pairs must satisfy b < c")
    bs = [b for b, _ in pairs]
    if bs != sorted(bs) or len(set(bs)) != len(bs):
        raise ParameterError("pair anchors b_i must be strictly increasing")
    if any(not 0 < a < field.q for a in alphas):
        raise ParameterError("pair coefficients must be units")


def expand_min(p: MinWordParams, s: int, field: FieldSpec) -> SqFreePoly:
    _check_pairs(p.pairs, p.alphas, s, field)
    if p.regime is Regime.MIN_LOW and p.tail:
        raise ParameterError("MinLow words have no tail")
    if p.regime is Regime.MIN_HIGH and tuple(p.tail) != _tail(s, [v for pr in p.pairs for v in pr]):
        raise ParameterError("MinHigh tail must be every variable outside the pairs")
    binomials = [(b, c, a) for (b, c), a in zip(p.pairs, p.alphas)]
    return expand_product(field, s, binomials, tail=p.tail, scalar=p.scalar)


def _cubic_block(field: FieldSpec, s: int, quad, quad_alphas) -> SqFreePoly:
    q1, q2, q3, q4 = quad
    a2, a3, a4 = quad_alphas
    return SqFreePoly(field, s, {
        (q2, q3, q4): 1,
        (q1, q3, q4): a2,
        (q1, q2, q4): a3,
        (q1, q2, q3): a4,
    })


def expand_ntm(p: NtmWordParams, s: int, field: FieldSpec) -> SqFreePoly:
    _check_pairs(p.pairs, p.alphas, s, field)
    if list(p.quad) != sorted(set(p.quad)) or len(p.quad) != 4:
        raise ParameterError("quad must be four strictly increasing indices")
    if any(not 0 < a < field.q for a in p.quad_alphas) or len(p.quad_alphas) != 3:
        raise ParameterError("quad coefficients must be three units")
    binomials = [(b, c, a) for (b, c), a in zip(p.pairs, p.alphas)]
    q1, q2, q3, q4 = p.quad
    a2, a3, a4 = p.quad_alphas
    if p.regime is Regime.NTM_LOW:
        if p.tail:
            raise ParameterError("NtmLow words have no tail")
        four = (q1, (q2, a2), (q3, a3), (q4, a4))
        return expand_product(field, s, binomials, four_term=four, scalar=p.scalar)
    if p.regime is not Regime.NTM_HIGH:
        raise ParameterError(f"{p.regime} is not a next-to-minimal regime")
    used = [v for pr in p.pairs for v in pr] + list(p.quad)
    if tuple(p.tail) != _tail(s, used):
        raise ParameterError("NtmHigh tail must be every variable outside pairs and quad")
    # checks disjointness and coefficient validity of pairs and tail
    prefix = expand_product(field, s, binomials, tail=p.tail, scalar=p.scalar)
    if set(p.quad) & {v for m in prefix.terms for v in m}:
        raise ParameterError("quad overlaps the pairs or tail")
    return prefix * _cubic_block(field, s, p.quad, p.quad_alphas)


# canonical enumeration

def pair_sequences(variables: Sequence[int], k: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Sequences of k disjoint pairs (b, c), b < c, b's increasing, in lex order of (b1, c1, b2, ...)."""
    variables = sorted(variables)

    def rec(start: int, used: frozenset, acc: tuple):
        if len(acc) == k:
            yield acc
            return
        for bi in range(start, len(variables)):
            b = variables[bi]
            if b in used:
                continue
            for c in variables[bi + 1:]:
                if c in used:
                    continue
                yield from rec(bi + 1, used | {b, c}, acc + ((b, c),))

    yield from rec(0, frozenset(), ())


def enumerate_min_params(p: CodeParams, field: FieldSpec) -> Iterator[MinWordParams]:
    """Monic minimal-word parameters; (q-1) * count equals ``min_word_count(p)``."""
    if p.d == p.s:
        raise UnsupportedRegimeError("no minimal-word family for d = s")
    regime = min_regime(p.s, p.d)
    all_vars = range(1, p.s + 1)
    for pairs in pair_sequences(all_vars, p.e):
        tail = _tail(p.s, [v for pr in pairs for v in pr]) if regime is Regime.MIN_HIGH else ()
        for alphas in itertools.product(field.units, repeat=p.e):
            yield MinWordParams(regime, pairs, alphas, 1, tail)


def enumerate_ntm_params(p: CodeParams, field: FieldSpec) -> Iterator[NtmWordParams]:
    """Monic next-to-minimal parameters; order is pairs, quad, pair coefficients, quad coefficients."""
    regime = ntm_regime(p.s, p.d)
    if regime is Regime.NTM_GAP or p.d == p.s:
        raise UnsupportedRegimeError(f"(s={p.s}, d={p.d}) lies in the uncovered band 2d-1 <= s <= 2d+1")
    all_vars = range(1, p.s + 1)
    for pairs in pair_sequences(all_vars, p.e - 1):
        rest = _tail(p.s, [v for pr in pairs for v in pr])
        for quad in itertools.combinations(rest, 4):
            tail = tuple(v for v in rest if v not in quad) if regime is Regime.NTM_HIGH else ()
            for alphas in itertools.product(field.units, repeat=p.e - 1):
                for quad_alphas in itertools.product(field.units, repeat=3):
                    yield NtmWordParams(regime, pairs, alphas, quad, quad_alphas, 1, tail)


# complement correspondence between the Low and High shapes

def complement_min_params(p: MinWordParams, s: int, field: FieldSpec) -> MinWordParams:
    """Parameters of complement(expand_min(p)) in the opposite regime."""
    flipped = tuple(field.inv(a) for a in p.alphas)
    scalar = p.scalar
    for a in p.alphas:
        scalar = field.mul(scalar, a)
    used = [v for pr in p.pairs for v in pr]
    if p.regime is Regime.MIN_LOW:
        return MinWordParams(Regime.MIN_HIGH, p.pairs, flipped, scalar, _tail(s, used))
    return MinWordParams(Regime.MIN_LOW, p.pairs, flipped, scalar, ())


def complement_ntm_params(p: NtmWordParams, s: int, field: FieldSpec) -> NtmWordParams:
    """Parameters of complement(expand_ntm(p)) in the opposite regime."""
    flipped = tuple(field.inv(a) for a in p.alphas)
    scalar = p.scalar
    for a in p.alphas:
        scalar = field.mul(scalar, a)
    used = [v for pr in p.pairs for v in pr] + list(p.quad)
    if p.regime is Regime.NTM_LOW:
        return NtmWordParams(Regime.NTM_HIGH, p.pairs, flipped, p.quad, p.quad_alphas, scalar, _tail(s, used))
    return NtmWordParams(Regime.NTM_LOW, p.pairs, flipped, p.quad, p.quad_alphas, scalar, ())


# recognition

def _single_swaps(lm: tuple[int, ...], var: int, terms) -> list[tuple[int, tuple[int, ...]]]:
    """Support monomials obtained from lm by replacing ``var`` with one outside variable."""
    rest = set(lm) - {var}
    found = []
    for mono in terms:
        extra = set(mono) - rest
        if len(mono) == len(lm) and rest <= set(mono) and len(extra) == 1:
            (other,) = extra
            if other not in lm:
                found.append((other, mono))
    return found


def _strip_tail(f: SqFreePoly) -> tuple[tuple[int, ...], dict]:
    common = set.intersection(*(set(m) for m in f.terms))
    reduced = {tuple(v for v in m if v not in common): c for m, c in f.terms.items()}
    return tuple(sorted(common)), reduced


def recognize_min(f: SqFreePoly, p: CodeParams) -> MinWordParams | None:
    """Canonical parameters of f if it is a minimal-weight word, else ``None``.

    Works purely on the support: strips the common tail variables, reads the
    b's off the leading monomial, finds each b's unique single-swap partner
    and re-expands to confirm.
    """
    if f.is_zero() or f.degree != p.d or f.s != p.s or p.d == p.s:
        return None
    e = p.e
    if len(f.terms) != 2**e:
        return None
    regime = min_regime(p.s, p.d)
    tail, reduced = _strip_tail(f)
    if len(tail) != p.d - e:
        return None
    lm = leading_monomial(SqFreePoly(f.field, f.s, reduced))
    lead = reduced[lm]
    F = f.field
    pairs, alphas = [], []
    for b in lm:
        swaps = _single_swaps(lm, b, reduced)
        if len(swaps) != 1:
            return None
        c, mono = swaps[0]
        if c < b:
            return None
        pairs.append((b, c))
        alphas.append(F.div(reduced[mono], lead))
    params = MinWordParams(regime, tuple(pairs), tuple(alphas), lead, tail)
    try:
        if expand_min(params, p.s, F) != f:
            return None
    except ParameterError:
        return None
    return params


def _recognize_ntm_low(f: SqFreePoly, s: int, d: int) -> NtmWordParams | None:
    if len(f.terms) != 2 ** (d - 1) * 4:
        return None
    lm = leading_monomial(f)
    lead = f.terms[lm]
    F = f.field
    pairs, alphas, quad_anchor = [], [], None
    quad_swaps = []
    for b in lm:
        swaps = _single_swaps(lm, b, f.terms)
        if len(swaps) == 1:
            c, mono = swaps[0]
            pairs.append((b, c))
            alphas.append(F.div(f.terms[mono], lead))
        elif len(swaps) == 3 and quad_anchor is None:
            quad_anchor, quad_swaps = b, sorted(swaps)
        else:
            return None
    if quad_anchor is None:
        return None
    quad = (quad_anchor, *(v for v, _ in quad_swaps))
    quad_alphas = tuple(F.div(f.terms[mono], lead) for _, mono in quad_swaps)
    params = NtmWordParams(Regime.NTM_LOW, tuple(pairs), tuple(alphas), quad, quad_alphas, lead, ())
    try:
        if expand_ntm(params, s, F) != f:
            return None
    except ParameterError:
        return None
    return params


def recognize_ntm(f: SqFreePoly, p: CodeParams) -> NtmWordParams | None:
    """Canonical parameters of f if it is a next-to-minimal word, else ``None``.

    The four-variable block's anchor is the leading-monomial variable with
    three single-swap partners.  High-regime inputs are complemented, matched
    in the low shape, and mapped back.
    """
    if f.is_zero() or f.degree != p.d or f.s != p.s:
        return None
    regime = ntm_regime(p.s, p.d)
    if regime is Regime.NTM_GAP or p.d == p.s:
        return None
    if regime is Regime.NTM_LOW:
        return _recognize_ntm_low(f, p.s, p.d)
    low = _recognize_ntm_low(complement(f), p.s, p.s - p.d)
    if low is None:
        return None
    params = complement_ntm_params(low, p.s, f.field)
    if expand_ntm(params, p.s, f.field) != f:
        return None
    return params
