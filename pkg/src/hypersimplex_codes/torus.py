"""The torus X = (F_q^*)^s, the evaluation map and the generator matrix of C(d)."""

from __future__ import annotations

import io
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import ParameterError, ResourceError
from .field import FieldSpec
from .polynomial import Monomial, SqFreePoly, hypersimplex_basis

# refuse to materialise more field elements than this without an override
DEFAULT_ELEMENT_GUARD = 2**28


class TorusPointSet:
    """Points of (F_q^*)^s in mixed-radix order.

    Index i read as s digits base q-1 (most significant digit = coordinate 1);
    digit k selects ``field.units[k]``.  Point 0 is (1, ..., 1).
    """

    def __init__(self, field: FieldSpec, s: int, guard: int = DEFAULT_ELEMENT_GUARD):
        if s < 1:
            raise ParameterError("s must be at least 1")
        self.field = field
        self.s = s
        self.n = (field.q - 1) ** s
        if self.n * s > guard:
            raise ResourceError(f"torus with {self.n} points in dimension {s} exceeds the guard {guard}")
        radix = field.q - 1
        idx = np.arange(self.n, dtype=np.int64)
        digits = np.empty((self.n, s), dtype=np.int64)
        for j in range(s):
            digits[:, j] = (idx // radix ** (s - 1 - j)) % radix
        self.digits = digits
        self.points = np.asarray(field.units, dtype=field.dtype)[digits]
        self.points.flags.writeable = False
        self._columns: dict[Monomial, np.ndarray] = {}

    def __len__(self) -> int:
        return self.n

    def point(self, i: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.points[i])

    def index_of(self, point) -> int:
        radix = self.field.q - 1
        index = 0
        for value in point:
            k = int(self.field.unit_index[value])
            if k < 0:
                raise ParameterError(f"{tuple(point)} is not a torus point")
            index = index * radix + k
        return index

    def indices_of(self, points: np.ndarray) -> np.ndarray:
        """Vectorised :meth:`index_of` for an (N, s) array of points."""
        radix = self.field.q - 1
        digits = self.field.unit_index[points]
        weights = radix ** np.arange(self.s - 1, -1, -1, dtype=np.int64)
        return digits @ weights

    def monomial_column(self, mono: Monomial) -> np.ndarray:
        """Values of a square-free monomial at every point (cached)."""
        col = self._columns.get(mono)
        if col is None:
            F = self.field
            col = np.ones(self.n, dtype=F.dtype)
            for v in mono:
                col = F.mul_arrays(col, self.points[:, v - 1])
            col.flags.writeable = False
            self._columns[mono] = col
        return col


def enumerate_torus(field: FieldSpec, s: int, guard: int = DEFAULT_ELEMENT_GUARD) -> TorusPointSet:
    return TorusPointSet(field, s, guard)


@dataclass(frozen=True, eq=False)
class Codeword:
    values: np.ndarray
    weight: int = dc_field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "weight", int(np.count_nonzero(self.values)))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(int(i) for i in np.flatnonzero(self.values))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Codeword) and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash(self.values.tobytes())

    def to_hex(self) -> str:
        return self.values.astype(np.uint8).tobytes().hex()

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("index,value\n")
        for i, v in enumerate(self.values):
            buf.write(f"{i},{int(v)}\n")
        return buf.getvalue()


def evaluate(f: SqFreePoly, X: TorusPointSet) -> Codeword:
    """(f(P_1), ..., f(P_n)) as a codeword."""
    if f.s != X.s or f.field != X.field:
        raise ParameterError("polynomial and point set have different ambient dimension or field")
    F = X.field
    acc = np.zeros(X.n, dtype=F.dtype)
    for mono, coeff in f.terms.items():
        acc = F.add_arrays(acc, F.mul_arrays(coeff, X.monomial_column(mono)))
    return Codeword(acc)


def generator_matrix(
    field: FieldSpec, s: int, d: int, guard: int = DEFAULT_ELEMENT_GUARD, X: TorusPointSet | None = None
) -> np.ndarray:
    """C(s, d) x n matrix; row i evaluates the i-th hypersimplex basis monomial."""
    basis = hypersimplex_basis(s, d)
    if X is None:
        X = TorusPointSet(field, s, guard)
    if len(basis) * X.n > guard:
        raise ResourceError(f"generator matrix {len(basis)}x{X.n} exceeds the guard {guard}")
    return np.stack([X.monomial_column(m) for m in basis])


def matrix_rank(field: FieldSpec, matrix: np.ndarray) -> int:
    """Rank over GF(q) by Gaussian elimination."""
    A = np.array(matrix, dtype=field.dtype, copy=True)
    rows, cols = A.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        pivots = np.flatnonzero(A[rank:, col])
        if pivots.size == 0:
            continue
        pivot = rank + pivots[0]
        A[[rank, pivot]] = A[[pivot, rank]]
        A[rank] = field.mul_arrays(field.inv(int(A[rank, col])), A[rank])
        for r in range(rows):
            if r != rank and A[r, col]:
                factor = field.neg(int(A[r, col]))
                A[r] = field.add_arrays(A[r], field.mul_arrays(factor, A[rank]))
        rank += 1
    return rank


def equivalence_transform(field: FieldSpec, s: int, X: TorusPointSet | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Point permutation and scaling relating C(d) to C(s - d).

    ``perm[i]`` is the index of the coordinate-wise inverse of point i and
    ``scale[i]`` the product of its coordinates, so that for every f in S_d
    ``evaluate(f)[i] == scale[i] * evaluate(complement(f))[perm[i]]``.
    """
    if X is None:
        X = TorusPointSet(field, s)
    perm = X.indices_of(field.inv_table[X.points])
    scale = np.ones(X.n, dtype=field.dtype)
    for j in range(s):
        scale = field.mul_arrays(scale, X.points[:, j])
    return perm, scale


def point_permutation(X: TorusPointSet, sigma) -> np.ndarray:
    """Indices j with P_j = sigma(P_i), where sigma(P) = (beta_sigma(1), ..., beta_sigma(s))."""
    if sigma.s != X.s:
        raise ParameterError("permutation acts on a different number of variables")
    columns = [sigma(i) - 1 for i in range(1, X.s + 1)]
    return X.indices_of(X.points[:, columns])
