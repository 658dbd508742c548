"""Homogeneous monomially square-free polynomials over GF(q).

A square-free monomial is stored as the sorted tuple of its (1-based)
variable indices, so ``(1, 3)`` is ``t1*t3`` and ``()`` is the constant 1.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Iterable, Mapping, Sequence

from .errors import DomainError, ParameterError
from .field import FieldSpec

Monomial = tuple[int, ...]


def monomial(*variables: int) -> Monomial:
    return tuple(sorted(variables))


def exponent_vector(mono: Monomial, s: int) -> tuple[int, ...]:
    present = set(mono)
    return tuple(1 if i in present else 0 for i in range(1, s + 1))


def grlex_key(mono: Monomial, s: int) -> tuple[int, tuple[int, ...]]:
    """Sort key for graded-lex order with t_s < ... < t_1 (larger key = larger monomial)."""
    return len(mono), exponent_vector(mono, s)


def hypersimplex_basis(s: int, d: int) -> list[Monomial]:
    """All degree-d square-free monomials in s variables, grlex-descending."""
    if not 0 <= d <= s:
        raise ParameterError(f"degree d={d} outside [0, s={s}]")
    return list(itertools.combinations(range(1, s + 1), d))


class SqFreePoly:
    """Element of S_d: a homogeneous polynomial whose monomials are square-free.

    ``terms`` maps monomials to nonzero field elements.  The zero polynomial
    has an empty map and ``degree`` ``None``.
    """

    __slots__ = ("field", "s", "terms", "degree", "_hash")

    def __init__(self, field: FieldSpec, s: int, terms: Mapping[Monomial, int] | None = None):
        self.field = field
        self.s = s
        clean: dict[Monomial, int] = {}
        degree = None
        for mono, coeff in (terms or {}).items():
            coeff = int(coeff)
            if not 0 <= coeff < field.q:
                raise ParameterError(f"coefficient {coeff} is not an element of GF({field.q})")
            if coeff == 0:
                continue
            mono = tuple(sorted(mono))
            if len(set(mono)) != len(mono) or (mono and not 1 <= mono[0] <= mono[-1] <= s):
                raise ParameterError(f"{mono} is not a square-free monomial in {s} variables")
            if degree is None:
                degree = len(mono)
            elif len(mono) != degree:
                raise ParameterError("polynomial is not homogeneous")
            clean[mono] = coeff
        self.terms = clean
        self.degree = degree
        self._hash = None

    @classmethod
    def from_monomial(cls, field: FieldSpec, s: int, mono: Iterable[int], coeff: int = 1) -> SqFreePoly:
        return cls(field, s, {tuple(sorted(mono)): coeff})

    def __repr__(self) -> str:
        return f"SqFreePoly({to_text(self)!r}, s={self.s}, q={self.field.q})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SqFreePoly):
            return NotImplemented
        return self.field == other.field and self.s == other.s and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.q, self.s, frozenset(self.terms.items())))
        return self._hash

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def support(self) -> list[Monomial]:
        return sorted(self.terms, key=lambda m: grlex_key(m, self.s), reverse=True)

    def coefficient(self, mono: Monomial) -> int:
        return self.terms.get(tuple(sorted(mono)), 0)

    def _check_compatible(self, other: SqFreePoly) -> None:
        if self.field != other.field or self.s != other.s:
            raise ParameterError("polynomials live in different rings")

    def __add__(self, other: SqFreePoly) -> SqFreePoly:
        self._check_compatible(other)
        F = self.field
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = F.add(out.get(mono, 0), c)
        return SqFreePoly(F, self.s, out)

    def __neg__(self) -> SqFreePoly:
        return self.scale(self.field.neg(1))

    def __sub__(self, other: SqFreePoly) -> SqFreePoly:
        return self + (-other)

    def scale(self, c: int) -> SqFreePoly:
        F = self.field
        return SqFreePoly(F, self.s, {m: F.mul(c, v) for m, v in self.terms.items()})

    def __mul__(self, other: SqFreePoly) -> SqFreePoly:
        """Product; raises if any pair of monomials shares a variable."""
        self._check_compatible(other)
        F = self.field
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                if set(m1) & set(m2):
                    raise ParameterError("product is not monomially square-free")
                mono = tuple(sorted(m1 + m2))
                out[mono] = F.add(out.get(mono, 0), F.mul(c1, c2))
        return SqFreePoly(F, self.s, out)

    def monic(self) -> SqFreePoly:
        return self.scale(self.field.inv(self.terms[leading_monomial(self)]))


def leading_monomial(f: SqFreePoly) -> Monomial:
    if f.is_zero():
        raise DomainError("the zero polynomial has no leading monomial")
    return max(f.terms, key=lambda m: grlex_key(m, f.s))


def leading_coefficient(f: SqFreePoly) -> int:
    return f.terms[leading_monomial(f)]


def _linear(field: FieldSpec, s: int, coeffs: Sequence[tuple[int, int]]) -> SqFreePoly:
    return SqFreePoly(field, s, {(v,): c for v, c in coeffs})


def expand_product(
    field: FieldSpec,
    s: int,
    binomials: Sequence[tuple[int, int, int]] = (),
    four_term: tuple[int, tuple[int, int], tuple[int, int], tuple[int, int]] | None = None,
    tail: Iterable[int] = (),
    scalar: int = 1,
) -> SqFreePoly:
    """Expand ``scalar * prod(t_b + a*t_c) * (t_b1 + a2 t_b2 + a3 t_b3 + a4 t_b4) * prod(tail)``.

    ``binomials`` holds ``(b, c, a)`` triples and ``four_term`` is
    ``(b1, (b2, a2), (b3, a3), (b4, a4))``.
    """
    tail = tuple(tail)
    used = [v for b, c, _ in binomials for v in (b, c)] + list(tail)
    coeffs = [a for _, _, a in binomials] + [scalar]
    if four_term is not None:
        used += [four_term[0]] + [v for v, _ in four_term[1:]]
        coeffs += [a for _, a in four_term[1:]]
    if len(set(used)) != len(used):
        raise ParameterError(f"repeated variable index in {used}")
    if any(not 1 <= v <= s for v in used):
        raise ParameterError(f"variable index outside 1..{s}")
    if any(c == 0 or not 0 < c < field.q for c in coeffs):
        raise ParameterError("all coefficients must be nonzero field elements")

    result = SqFreePoly.from_monomial(field, s, tail, scalar)
    for b, c, a in binomials:
        result = result * _linear(field, s, [(b, 1), (c, a)])
    if four_term is not None:
        result = result * _linear(field, s, [(four_term[0], 1), *four_term[1:]])
    return result


class Permutation:
    """Bijection of {1..s}; ``images[i-1]`` is the image of i."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ParameterError(f"{images} is not a permutation of 1..{len(images)}")
        self.images = images

    @classmethod
    def identity(cls, s: int) -> Permutation:
        return cls(range(1, s + 1))

    @classmethod
    def transposition(cls, s: int, i: int, j: int) -> Permutation:
        images = list(range(1, s + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(images)

    @property
    def s(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> Permutation:
        inv = [0] * self.s
        for i, image in enumerate(self.images, start=1):
            inv[image - 1] = i
        return Permutation(inv)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"

    def act_on_point(self, point: Sequence[int]) -> tuple[int, ...]:
        """sigma(P) = (beta_sigma(1), ..., beta_sigma(s))."""
        return tuple(point[self(i) - 1] for i in range(1, self.s + 1))


def permute(f: SqFreePoly, sigma: Permutation) -> SqFreePoly:
    if sigma.s != f.s:
        raise ParameterError("permutation acts on a different number of variables")
    return SqFreePoly(f.field, f.s, {tuple(sorted(sigma(v) for v in m)): c for m, c in f.terms.items()})


def complement_monomial(mono: Monomial, s: int) -> Monomial:
    present = set(mono)
    return tuple(i for i in range(1, s + 1) if i not in present)


def complement(f: SqFreePoly) -> SqFreePoly:
    """f^c: every monomial M replaced by the product of the variables missing from M."""
    return SqFreePoly(f.field, f.s, {complement_monomial(m, f.s): c for m, c in f.terms.items()})


# text form: "3*t1*t2 + t2*t4"; coefficient 1 is omitted on output

def to_text(f: SqFreePoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for mono in f.support:
        coeff = f.terms[mono]
        factors = [f"t{v}" for v in mono]
        if coeff != 1 or not factors:
            factors.insert(0, str(coeff))
        parts.append("*".join(factors))
    return " + ".join(parts)


_VAR = re.compile(r"t_?(\d+)$")


def parse_poly(text: str, field: FieldSpec, s: int) -> SqFreePoly:
    """Parse the text form; coefficients are element encodings."""
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise ParameterError("empty polynomial text")
    if compact == "0":
        return SqFreePoly(field, s)
    total: dict[Monomial, int] = {}
    for term in compact.split("+"):
        if not term:
            raise ParameterError(f"malformed polynomial text: {text!r}")
        coeff, variables = 1, []
        for factor in term.split("*"):
            match = _VAR.match(factor)
            if match:
                variables.append(int(match.group(1)))
            elif factor.isdigit():
                value = int(factor)
                if value >= field.q:
                    raise ParameterError(f"{value} is not an element of GF({field.q})")
                coeff = field.mul(coeff, value)
            else:
                raise ParameterError(f"cannot parse factor {factor!r}")
        mono = tuple(sorted(variables))
        if len(set(mono)) != len(mono):
            raise ParameterError(f"term {term!r} is not square-free")
        total[mono] = field.add(total.get(mono, 0), coeff)
    return SqFreePoly(field, s, total)
