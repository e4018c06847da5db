"""Truncated matrices over explicit Fourier bases.

Builds the Hardy projection, the sign reflection 2P-1, multiplication
operators, Hankel blocks and commutators [P, a], and products thereof.
Matrices are dense complex arrays tagged with basis index maps so products
can refuse mismatched bases instead of silently misaligning modes.

Truncation note: for a trig-polynomial symbol of degree d, entries of a
product of two truncated commutators are exact on rows/columns whose mode
modulus is at most N - d (the "safe band"); nothing inside that band sees
the truncation boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import BasisMismatchError, ParameterError
from .fourier import FourierSymbol

__all__ = [
    "OrderingRule",
    "BasisIndexMap",
    "TruncatedOperator",
    "hardy_basis",
    "full_basis",
    "antiholomorphic_basis",
    "hankel_matrix",
    "commutator_matrix",
    "multiplication_matrix",
    "szego_projection",
    "szego_reflection",
    "operator_product",
    "compress",
    "hardy_compress",
    "operator_to_json_obj",
]


class OrderingRule(Enum):
    HARDY_NATURAL = "hardy-natural"  # 0, 1, 2, ...
    FULL_BY_MODULUS = "full-by-modulus"  # 0, 1, -1, 2, -2, ...
    ANTIHOLOMORPHIC = "antiholomorphic"  # -1, -2, -3, ...


def _expected_labels(rule: OrderingRule, size: int) -> tuple[int, ...]:
    if rule is OrderingRule.HARDY_NATURAL:
        return tuple(range(size))
    if rule is OrderingRule.ANTIHOLOMORPHIC:
        return tuple(-1 - i for i in range(size))
    labels = [0]
    m = 1
    while len(labels) < size:
        labels.append(m)
        if len(labels) < size:
            labels.append(-m)
        m += 1
    return tuple(labels)


@dataclass(frozen=True)
class BasisIndexMap:
    """Ordered Fourier-mode labels together with the rule they follow."""

    labels: tuple[int, ...]
    ordering_rule: OrderingRule

    def __post_init__(self) -> None:
        labels = tuple(int(k) for k in self.labels)
        object.__setattr__(self, "labels", labels)
        if len(set(labels)) != len(labels):
            raise ParameterError("basis labels must be distinct")
        if labels != _expected_labels(self.ordering_rule, len(labels)):
            raise ParameterError(
                f"labels do not follow the {self.ordering_rule.value} ordering"
            )

    @property
    def size(self) -> int:
        return len(self.labels)


def hardy_basis(size: int) -> BasisIndexMap:
    return BasisIndexMap(tuple(range(size)), OrderingRule.HARDY_NATURAL)


def antiholomorphic_basis(size: int) -> BasisIndexMap:
    return BasisIndexMap(tuple(-1 - i for i in range(size)), OrderingRule.ANTIHOLOMORPHIC)


def full_basis(n: int) -> BasisIndexMap:
    """Modes -n..n ordered by modulus, nonnegative mode first on ties."""
    return BasisIndexMap(
        _expected_labels(OrderingRule.FULL_BY_MODULUS, 2 * n + 1),
        OrderingRule.FULL_BY_MODULUS,
    )


@dataclass(frozen=True)
class TruncatedOperator:
    matrix: np.ndarray
    row_basis: BasisIndexMap
    col_basis: BasisIndexMap

    def __post_init__(self) -> None:
        mat = np.array(self.matrix, dtype=complex)
        if mat.ndim != 2:
            raise ParameterError("operator matrix must be 2-d")
        if mat.shape != (self.row_basis.size, self.col_basis.size):
            raise ParameterError(
                f"matrix shape {mat.shape} does not match bases "
                f"({self.row_basis.size}, {self.col_basis.size})"
            )
        if not np.all(np.isfinite(mat)):
            raise ParameterError("operator entries must be finite")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def trace(self) -> complex:
        if self.row_basis != self.col_basis:
            raise BasisMismatchError("trace needs identical row and column bases")
        return complex(np.trace(self.matrix))

    def adjoint(self) -> "TruncatedOperator":
        return TruncatedOperator(self.matrix.conj().T, self.col_basis, self.row_basis)


def _coeff_lookup(a: FourierSymbol, lo: int, hi: int) -> np.ndarray:
    """Dense vector of coefficients a_k for k = lo..hi."""
    out = np.zeros(hi - lo + 1, dtype=complex)
    for k, v in a.coeffs.items():
        if lo <= k <= hi:
            out[k - lo] = v
    return out


def hankel_matrix(a: FourierSymbol, n: int) -> TruncatedOperator:
    """N x N block of P a (1-P): entry [l, i] = a_{l+i+1}.

    Rows run over holomorphic modes 0..N-1, columns over antiholomorphic
    modes -1..-N; only the analytic part of the symbol contributes, and the
    matrix is constant along anti-diagonals.
    """
    if n < 1:
        raise ParameterError("truncation size must be >= 1")
    vec = _coeff_lookup(a, 0, 2 * n)
    idx = np.add.outer(np.arange(n), np.arange(n)) + 1
    return TruncatedOperator(vec[idx], hardy_basis(n), antiholomorphic_basis(n))


def commutator_matrix(a: FourierSymbol, n: int) -> TruncatedOperator:
    """[P, a] on modes -n..n: entry [m, l] = (1_{m>=0} - 1_{l>=0}) a_{m-l}."""
    if n < 1:
        raise ParameterError("truncation size must be >= 1")
    basis = full_basis(n)
    labels = np.asarray(basis.labels)
    vec = _coeff_lookup(a, -2 * n, 2 * n)
    diff = labels[:, None] - labels[None, :]
    sign = (labels[:, None] >= 0).astype(float) - (labels[None, :] >= 0).astype(float)
    return TruncatedOperator(sign * vec[diff + 2 * n], basis, basis)


def multiplication_matrix(a: FourierSymbol, basis: BasisIndexMap) -> TruncatedOperator:
    """Multiplication by ``a`` compressed to the given basis: [m, l] = a_{m-l}."""
    labels = np.asarray(basis.labels)
    span = int(labels.max() - labels.min())
    vec = _coeff_lookup(a, -span, span)
    diff = labels[:, None] - labels[None, :]
    return TruncatedOperator(vec[diff + span], basis, basis)


def szego_projection(n: int) -> TruncatedOperator:
    """P on modes -n..n: diagonal 1 on modes >= 0, 0 below."""
    basis = full_basis(n)
    diag = (np.asarray(basis.labels) >= 0).astype(complex)
    return TruncatedOperator(np.diag(diag), basis, basis)


def szego_reflection(n: int) -> TruncatedOperator:
    """2P - 1 on modes -n..n: diagonal +1 on modes >= 0, -1 below."""
    if n < 1:
        raise ParameterError("truncation size must be >= 1")
    basis = full_basis(n)
    diag = np.where(np.asarray(basis.labels) >= 0, 1.0, -1.0).astype(complex)
    return TruncatedOperator(np.diag(diag), basis, basis)


def operator_product(ops: list[TruncatedOperator]) -> TruncatedOperator:
    """Matrix product in the given order; adjacent bases must match exactly."""
    if not ops:
        raise ParameterError("operator product needs at least one factor")
    for left, right in zip(ops, ops[1:]):
        if left.col_basis != right.row_basis:
            raise BasisMismatchError(
                "adjacent operators disagree: columns "
                f"{left.col_basis.ordering_rule.value}[{left.col_basis.size}] vs rows "
                f"{right.row_basis.ordering_rule.value}[{right.row_basis.size}]"
            )
    mat = ops[0].matrix
    for op in ops[1:]:
        mat = mat @ op.matrix
    return TruncatedOperator(mat, ops[0].row_basis, ops[-1].col_basis)


def compress(
    op: TruncatedOperator, row_basis: BasisIndexMap, col_basis: BasisIndexMap
) -> TruncatedOperator:
    """Select the sub-matrix over the given label sets (which must be present)."""
    try:
        rows = [op.row_basis.labels.index(k) for k in row_basis.labels]
        cols = [op.col_basis.labels.index(k) for k in col_basis.labels]
    except ValueError as exc:
        raise BasisMismatchError(f"compression label missing from operator basis: {exc}")
    return TruncatedOperator(op.matrix[np.ix_(rows, cols)], row_basis, col_basis)


def hardy_compress(op: TruncatedOperator, size: int) -> TruncatedOperator:
    """Compress to the holomorphic modes 0..size-1 (applies P on both sides)."""
    basis = hardy_basis(size)
    return compress(op, basis, basis)


def operator_to_json_obj(op: TruncatedOperator) -> dict:
    """Binary-free dump: bases plus rows of [re, im] pairs."""
    return {
        "row_basis": {
            "ordering": op.row_basis.ordering_rule.value,
            "labels": list(op.row_basis.labels),
        },
        "col_basis": {
            "ordering": op.col_basis.ordering_rule.value,
            "labels": list(op.col_basis.labels),
        },
        "rows": [[[z.real, z.imag] for z in row] for row in op.matrix],
    }
