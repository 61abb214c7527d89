"""
Exact integer matrices, Smith normal form and cokernels

Entries are Python ints throughout (arbitrary precision); numpy is only used
with dtype=object so nothing is ever squeezed into fixed-width integers.
"""

import itertools
import math
from functools import reduce

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DM
from sympy.polys.matrices.normalforms import invariant_factors


class IntMatrix(BaseModel):
    """Immutable rows x cols integer matrix stored row-major"""

    model_config = ConfigDict(frozen=True)

    rows: int = Field(..., ge=0)
    cols: int = Field(..., ge=0)
    entries: tuple[int, ...] = ()

    @model_validator(mode="after")
    def _check_shape(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"expected {self.rows * self.cols} entries, got {len(self.entries)}")
        return self

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else 0
        if any(len(r) != n_cols for r in rows):
            raise ValueError("ragged rows")
        return cls(rows=n_rows, cols=n_cols, entries=tuple(int(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows=rows, cols=cols, entries=(0,) * (rows * cols))

    @classmethod
    def identity(cls, n):
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_numpy(cls, array):
        array = np.asarray(array, dtype=object)
        if array.ndim != 2:
            raise ValueError("expected a 2-d array")
        return cls.from_rows(array.tolist())

    def to_numpy(self):
        return np.array(self.entries, dtype=object).reshape(self.rows, self.cols)

    def to_rows(self):
        return [list(self.entries[i * self.cols : (i + 1) * self.cols]) for i in range(self.rows)]

    def __getitem__(self, index):
        i, j = index
        return self.entries[i * self.cols + j]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def transpose(self):
        entries = tuple(self[i, j] for j in range(self.cols) for i in range(self.rows))
        return IntMatrix(rows=self.cols, cols=self.rows, entries=entries)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.rows == 0 or other.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        if self.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        return IntMatrix.from_numpy(self.to_numpy().dot(other.to_numpy()))

    def is_symmetric(self):
        return self.rows == self.cols and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def determinant(self):
        """Exact determinant of a square matrix"""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if self.rows == 0:
            return 1
        return int(DM(self.to_rows(), ZZ).det())

    def minors(self, k):
        """All k x k minors (row subset, column subset order)"""
        rows = self.to_rows()
        for r in itertools.combinations(range(self.rows), k):
            for c in itertools.combinations(range(self.cols), k):
                sub = IntMatrix.from_rows([[rows[i][j] for j in c] for i in r])
                yield sub.determinant()


class H1Summary(BaseModel):
    """Finitely generated abelian group Z^free_rank + sum of Z/t"""

    model_config = ConfigDict(frozen=True)

    free_rank: int = Field(..., ge=0)
    torsion: tuple[int, ...] = ()

    @model_validator(mode="after")
    def _check_chain(self):
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion coefficients must be >= 2")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError(f"torsion {self.torsion} is not a divisibility chain")
        return self

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def _normalize_diagonal(values):
    """
    Turn any diagonal of an equivalent diagonal matrix into the canonical
    divisibility chain (nonnegative, zeros last)
    """
    d = [abs(int(x)) for x in values]
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            g = math.gcd(d[i], d[j])
            lcm = math.lcm(d[i], d[j])
            d[i], d[j] = g, lcm
    nonzero = [x for x in d if x != 0]
    return nonzero + [0] * (n - len(nonzero))


def smith_normal_form(matrix):
    """
    Invariant factors d1 | d2 | ... | dr of an integer matrix, r = min(rows, cols)

    Args:
        matrix: IntMatrix (any shape)

    Returns:
        list: nonnegative invariant factors, zeros trailing
    """
    r = min(matrix.rows, matrix.cols)
    if r == 0:
        return []
    factors = [int(f) for f in invariant_factors(DM(matrix.to_rows(), ZZ))]
    if len(factors) > r:
        raise ArithmeticError(f"got {len(factors)} invariant factors for a {matrix.shape} matrix")
    factors += [0] * (r - len(factors))
    return _normalize_diagonal(factors)


def smith_form_brute_force(matrix):
    """
    Invariant factors from determinantal divisors: d1*...*dk = gcd of k x k minors

    Exponential in the size; only meant as an independent check on small
    matrices.
    """
    r = min(matrix.rows, matrix.cols)
    factors = []
    previous = 1
    for k in range(1, r + 1):
        divisor = reduce(math.gcd, matrix.minors(k), 0)
        if divisor == 0:
            factors.extend([0] * (r - k + 1))
            break
        factors.append(divisor // previous)
        previous = divisor
    return factors


def cokernel(matrix):
    """
    Cokernel of M : Z^cols -> Z^rows

    Args:
        matrix: IntMatrix

    Returns:
        H1Summary: free rank = rows - #nonzero factors, torsion = factors > 1
    """
    return summary_from_factors(matrix.rows, smith_normal_form(matrix))


def summary_from_factors(rows, factors):
    """Cokernel of a matrix with `rows` rows from its invariant factors"""
    nonzero = [f for f in factors if f != 0]
    return H1Summary(free_rank=rows - len(nonzero), torsion=tuple(f for f in nonzero if f > 1))


def corank(matrix):
    """Dimension of the kernel of a square matrix over Q"""
    return matrix.cols - sum(1 for f in smith_normal_form(matrix) if f != 0)
