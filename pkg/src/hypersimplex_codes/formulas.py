"""Closed forms for C(d): minimum distance, next-to-minimal weight, word counts, D_u."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError
from .field import _prime_power


class Regime(enum.Enum):
    MIN_LOW = "MinLow"    # 2d <= s
    MIN_HIGH = "MinHigh"  # s < 2d < 2s
    NTM_LOW = "NtmLow"    # 2d + 2 <= s
    NTM_HIGH = "NtmHigh"  # 2d - 2 >= s
    NTM_GAP = "NtmGap"    # 2d - 1 <= s <= 2d + 1, no closed form known

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class CodeParams:
    """Parameters (q, s, d) of the code C(d) over (F_q^*)^s.

    The standing hypotheses are q >= 4 and 3 <= d < s; ``permissive=True``
    accepts any prime power q >= 2 and 1 <= d <= s, with ``in_hypothesis``
    telling the two apart.
    """

    q: int
    s: int
    d: int
    permissive: bool = False

    def __post_init__(self):
        if _prime_power(self.q) is None:
            raise ParameterError(f"q={self.q} is not a prime power")
        if not 1 <= self.d <= self.s:
            raise ParameterError(f"need 1 <= d <= s, got s={self.s}, d={self.d}")
        if not self.permissive and not self.in_hypothesis:
            raise ParameterError(
                f"(q={self.q}, s={self.s}, d={self.d}) violates q >= 4, 3 <= d < s; use permissive mode"
            )

    @property
    def in_hypothesis(self) -> bool:
        return self.q >= 4 and 3 <= self.d < self.s

    @property
    def n(self) -> int:
        return (self.q - 1) ** self.s

    @property
    def dimension(self) -> int:
        return math.comb(self.s, self.d)

    @property
    def e(self) -> int:
        """min(d, s - d): the number of linear factors of a minimal word."""
        return min(self.d, self.s - self.d)


def min_regime(s: int, d: int) -> Regime:
    return Regime.MIN_LOW if 2 * d <= s else Regime.MIN_HIGH


def ntm_regime(s: int, d: int) -> Regime:
    if 2 * d + 2 <= s:
        return Regime.NTM_LOW
    if 2 * d - 2 >= s:
        return Regime.NTM_HIGH
    return Regime.NTM_GAP


def min_distance(p: CodeParams) -> int:
    q, s, d = p.q, p.s, p.d
    if d == s:
        # single monomial code: every nonzero word has full weight
        return (q - 1) ** s
    if 2 * d <= s:
        return (q - 2) ** d * (q - 1) ** (s - d)
    return (q - 2) ** (s - d) * (q - 1) ** d


def ntm_weight(p: CodeParams) -> int | None:
    """Second least nonzero weight, or ``None`` in the uncovered band."""
    if p.d == p.s or ntm_regime(p.s, p.d) is Regime.NTM_GAP:
        return None
    e, f = p.e, max(p.d, p.s - p.d)
    return min_distance(p) + (p.q - 2) ** e * (p.q - 1) ** (f - 2)


def _falling(s: int, k: int) -> int:
    return math.prod(s - i for i in range(k))


def min_word_count(p: CodeParams) -> int:
    if p.d == p.s:
        raise ParameterError("minimal words are only counted for d < s")
    e = p.e
    num = (p.q - 1) ** (e + 1) * _falling(p.s, 2 * e)
    den = math.factorial(e) * 2**e
    assert num % den == 0
    return num // den


def ntm_word_count(p: CodeParams) -> int | None:
    if p.d == p.s or ntm_regime(p.s, p.d) is Regime.NTM_GAP:
        return None
    e = p.e
    num = (p.q - 1) ** (e + 3) * _falling(p.s, 2 * e + 2)
    den = math.factorial(e - 1) * 2 ** (e + 2) * 3
    assert num % den == 0
    return num // den


def du_closed(q: int, s: int, u: int) -> int:
    """Torus points of (F_q^*)^s that are not zeros of a_1 t_1 + ... + a_u t_u (all a_i != 0)."""
    if not 1 <= u <= s:
        raise ParameterError(f"need 1 <= u <= s, got u={u}, s={s}")
    num = (q - 1) ** (u + 1) + (-1) ** u
    assert num % q == 0
    return (num // q + (-1) ** (u + 1)) * (q - 1) ** (s - u)


def du_chain_check(q: int, s: int, k: int) -> bool:
    """D_{2k-1} > D_{2k+1} > (q-1)^{s+1}/q > D_{2k+2} > D_{2k}, compared exactly."""
    if k < 1 or 2 * k + 2 > s:
        raise ParameterError(f"chain needs 1 <= k and 2k + 2 <= s, got k={k}, s={s}")
    middle = Fraction((q - 1) ** (s + 1), q)
    d = {u: du_closed(q, s, u) for u in (2 * k - 1, 2 * k, 2 * k + 1, 2 * k + 2)}
    return d[2 * k - 1] > d[2 * k + 1] > middle > d[2 * k + 2] > d[2 * k]
