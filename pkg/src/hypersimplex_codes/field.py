"""Table-driven arithmetic in GF(p^m).

Elements are encoded as integers in ``[0, q)`` whose base-p digits are the
polynomial coefficients over GF(p), constant term least significant.  For
extension fields the modulus is the lexicographically smallest monic
irreducible polynomial of degree m, comparing coefficients from the constant
term upward.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .errors import DomainError, ParameterError, UnsupportedOrderError

MAX_VALIDATED_ORDER = 256
MIN_VALIDATED_ORDER = 4


def _prime_power(q: int) -> tuple[int, int] | None:
    if q < 2:
        return None
    p = next(f for f in range(2, q + 1) if q % f == 0)
    m = 0
    while q % p == 0:
        q //= p
        m += 1
    return (p, m) if q == 1 else None


# dense coefficient lists over GF(p), index i holds the coefficient of x^i

def _poly_mulmod(a: list[int], b: list[int], modulus: list[int], p: int) -> list[int]:
    m = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # modulus is monic
    for k in range(len(prod) - 1, m - 1, -1):
        c = prod[k]
        if c:
            for j in range(m + 1):
                prod[k - m + j] = (prod[k - m + j] - c * modulus[j]) % p
    return (prod + [0] * m)[:m]


def _poly_rem_is_zero(num: list[int], den: list[int], p: int) -> bool:
    num = list(num)
    inv_lead = pow(den[-1], p - 2, p)
    for k in range(len(num) - 1, len(den) - 2, -1):
        c = num[k] * inv_lead % p
        if c:
            shift = k - (len(den) - 1)
            for j, dj in enumerate(den):
                num[shift + j] = (num[shift + j] - c * dj) % p
    return not any(num[: len(den) - 1])


def _is_irreducible(poly: list[int], p: int) -> bool:
    m = len(poly) - 1
    for deg in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if _poly_rem_is_zero(poly, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Coefficients (constant term first, monic leading 1 included)."""
    for low in itertools.product(range(p), repeat=m):
        poly = list(low) + [1]
        if _is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # unreachable for prime p


class FieldSpec:
    """The finite field GF(q) with full addition and multiplication tables.

    Instances are immutable; build them with :func:`make_field`.
    """

    def __init__(self, q: int, p: int, m: int, modulus: tuple[int, ...]):
        self.q, self.p, self.m, self.modulus = q, p, m, modulus
        self.dtype = np.uint8 if q <= 256 else np.uint16
        digits = np.array(
            [[(x // p**i) % p for i in range(m)] for x in range(q)], dtype=np.int64
        )
        weights = p ** np.arange(m, dtype=np.int64)
        self.add_table = (((digits[:, None, :] + digits[None, :, :]) % p) @ weights).astype(self.dtype)
        self.neg_table = (((-digits) % p) @ weights).astype(self.dtype)

        def mul_raw(a: int, b: int) -> int:
            if m == 1:
                return a * b % p
            res = _poly_mulmod(list(digits[a]), list(digits[b]), list(modulus), p)
            return sum(c * p**i for i, c in enumerate(res))

        self.generator = self._smallest_primitive(mul_raw)
        exp = [1]
        for _ in range(q - 2):
            exp.append(mul_raw(exp[-1], self.generator))
        self.exp_table = np.array(exp, dtype=np.int64)
        self.log_table = np.full(q, -1, dtype=np.int64)
        self.log_table[self.exp_table] = np.arange(q - 1)

        logs = self.log_table[1:]
        self.mul_table = np.zeros((q, q), dtype=self.dtype)
        self.mul_table[1:, 1:] = self.exp_table[(logs[:, None] + logs[None, :]) % (q - 1)]
        self.inv_table = np.zeros(q, dtype=self.dtype)
        self.inv_table[1:] = self.exp_table[(-logs) % (q - 1)]

        if m == 1:
            self.units = tuple(range(1, q))
        else:
            self.units = tuple(int(x) for x in self.exp_table)
        self.unit_index = np.full(q, -1, dtype=np.int64)
        self.unit_index[list(self.units)] = np.arange(q - 1)
        for table in (self.add_table, self.neg_table, self.mul_table, self.inv_table,
                      self.exp_table, self.log_table, self.unit_index):
            table.flags.writeable = False

    def _smallest_primitive(self, mul_raw) -> int:
        if self.q == 2:
            return 1
        for g in range(2, self.q):
            x, order = g, 1
            while x != 1:
                x = mul_raw(x, g)
                order += 1
            if order == self.q - 1:
                return g
        raise AssertionError("finite field without primitive element")

    def __repr__(self) -> str:
        return f"FieldSpec(q={self.q})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and (self.q, self.modulus) == (other.q, other.modulus)

    def __hash__(self) -> int:
        return hash((self.q, self.modulus))

    @property
    def characteristic(self) -> int:
        return self.p

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero has no multiplicative inverse")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise DomainError("zero has no multiplicative inverse")
            return 1 if k == 0 else 0
        return int(self.exp_table[(self.log_table[a] * k) % (self.q - 1)])

    # vectorised forms used by the evaluation kernels

    def add_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.m == 1:
            return ((a.astype(np.int16) + b) % self.p).astype(self.dtype)
        return self.add_table[a, b]

    def mul_arrays(self, a, b) -> np.ndarray:
        return self.mul_table[a, b]


@lru_cache(maxsize=None)
def _build(q: int) -> FieldSpec:
    p, m = _prime_power(q)
    modulus = (0, 1) if m == 1 else smallest_irreducible(p, m)
    return FieldSpec(q, p, m, modulus)


def make_field(q: int, permissive: bool = False) -> FieldSpec:
    """Return GF(q).

    Validated mode accepts 4 <= q <= 256 only; ``permissive=True`` lifts the
    lower bound (q = 2, 3 are useful for plumbing tests) and the upper bound.
    """
    if not isinstance(q, (int, np.integer)) or _prime_power(int(q)) is None:
        raise ParameterError(f"q={q} is not a prime power")
    q = int(q)
    if not permissive:
        if q > MAX_VALIDATED_ORDER:
            raise UnsupportedOrderError(f"q={q} exceeds {MAX_VALIDATED_ORDER}")
        if q < MIN_VALIDATED_ORDER:
            raise UnsupportedOrderError(f"q={q} is below {MIN_VALIDATED_ORDER}; pass permissive=True")
    elif q > 2**16:
        raise UnsupportedOrderError(f"q={q} exceeds 65536")
    return _build(q)


def units(field: FieldSpec) -> tuple[int, ...]:
    """Nonzero elements in the canonical order (1 first)."""
    return field.units
