"""
Dense matrices and truncated singular value decomposition.

Matrices are plain two-dimensional ``float64`` numpy arrays; ``as_matrix``
is the single entry point that checks shape and finiteness. Factors follow a
fixed sign convention: in every column of ``U`` the entry of largest
magnitude is positive (ties go to the earliest row), with the matching
column of ``V`` flipped alongside, so results compare bit-for-bit across runs.
"""

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.linalg

from .errors import (
    InvalidOption,
    MalformedHeader,
    MalformedRow,
    MissingFile,
    RankOutOfRange,
    ShapeMismatch,
)
from .utils import ensure_finite, format_float

logger = logging.getLogger(__name__)

EXACT = 'exact'
RANDOMIZED = 'randomized'


def as_matrix(values, where='matrix'):
    m = ensure_finite(values, where)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ShapeMismatch(expected='non-empty 2-d matrix', received=m.shape)
    return m


@dataclass(frozen=True)
class SvdFactors:
    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray

    @property
    def k(self):
        return len(self.sigma)

    def reconstruct(self):
        return (self.U * self.sigma) @ self.V.T

    def scaled_rows(self):
        """Rows of U_k * diag(sigma_k)."""
        return self.U * self.sigma


def _fix_signs(U, Vt):
    pivots = np.argmax(np.abs(U), axis=0)
    signs = np.sign(U[pivots, np.arange(U.shape[1])])
    signs[signs == 0] = 1.0
    return U * signs, Vt * signs[:, None]


def _exact(M, k):
    try:
        U, s, Vt = scipy.linalg.svd(M, full_matrices=False, check_finite=False)
    except np.linalg.LinAlgError:
        logger.warning('gesdd did not converge, retrying with gesvd')
        U, s, Vt = scipy.linalg.svd(
            M, full_matrices=False, check_finite=False, lapack_driver='gesvd',
        )
    return U[:, :k], s[:k], Vt[:k]


def _randomized(M, k, seed, oversamples=10, power_iterations=2):
    m, n = M.shape
    size = min(k + oversamples, m, n)
    rng = np.random.default_rng(seed)
    Q, _ = scipy.linalg.qr(M @ rng.standard_normal((n, size)), mode='economic')
    for _ in range(power_iterations):
        Z, _ = scipy.linalg.qr(M.T @ Q, mode='economic')
        Q, _ = scipy.linalg.qr(M @ Z, mode='economic')
    Ub, s, Vt = scipy.linalg.svd(Q.T @ M, full_matrices=False, check_finite=False)
    return (Q @ Ub)[:, :k], s[:k], Vt[:k]


def truncated_svd(M, k: int, seed: int = 0, method: str = EXACT) -> SvdFactors:
    M = as_matrix(M, 'svd input')
    limit = min(M.shape)
    if not 1 <= k <= limit:
        raise RankOutOfRange(k=k, limit=limit)
    if method == EXACT:
        U, s, Vt = _exact(M, k)
    elif method == RANDOMIZED:
        U, s, Vt = _randomized(M, k, seed)
    else:
        raise InvalidOption(option='svd method', value=method, reason=f'expected {EXACT} or {RANDOMIZED}')
    U, Vt = _fix_signs(U, Vt)
    return SvdFactors(U, np.maximum(s, 0.0), Vt.T)


def frobenius_error(M, factors: SvdFactors) -> float:
    M = as_matrix(M)
    expected = (factors.U.shape[0], factors.V.shape[0])
    if M.shape != expected:
        raise ShapeMismatch(expected=expected, received=M.shape)
    return float(np.linalg.norm(M - factors.reconstruct(), 'fro'))


def save_matrix(path, M):
    M = as_matrix(M)
    with Path(path).open('w', encoding='utf-8') as fp:
        fp.write(f'{M.shape[0]} {M.shape[1]}\n')
        for row in M:
            fp.write(' '.join(format_float(v) for v in row) + '\n')


def load_matrix(path):
    path = Path(path)
    if not path.exists():
        raise MissingFile(path=str(path))
    with path.open('r', encoding='utf-8') as fp:
        header = fp.readline().split()
        try:
            m, n = (int(x) for x in header)
        except ValueError:
            raise MalformedHeader(path=str(path), reason='expected "m n"') from None
        rows = []
        for line_no, line in enumerate(fp, start=2):
            try:
                row = [float(x) for x in line.split()]
            except ValueError:
                raise MalformedRow(line=line_no, path=str(path), reason='not a float') from None
            if len(row) != n:
                raise MalformedRow(
                    line=line_no, path=str(path), reason=f'expected {n} values, saw {len(row)}',
                )
            rows.append(row)
    if len(rows) != m:
        raise MalformedHeader(path=str(path), reason=f'expected {m} rows, saw {len(rows)}')
    return as_matrix(np.array(rows), str(path))
