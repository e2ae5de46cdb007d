"""
Shannon-entropy question embeddings.

Each question/word cell holds the entropy contribution ``-p log2 p`` of the
word's relative frequency ``p`` inside that question; words absent from the
question hold a small negative sentinel instead. Transposed, each row
describes one word by its distribution over the training questions, and a
truncated SVD of that word-by-question matrix gives dense word vectors.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .baselines import inverse_document_frequency
from .errors import RankOutOfRange, ValueOutOfRange
from .numerics import EXACT, truncated_svd
from .preprocess import Vocabulary
from .vectors import ENTROPY, SET, EmbeddingModel

logger = logging.getLogger(__name__)

SENTINEL = -0.0001


def entropy_value(w: int, n: int, fill: float = SENTINEL) -> float:
    if n < 1:
        raise ValueOutOfRange(name='n', value=n, bounds='[1, inf)')
    if w < 0 or w > n:
        raise ValueOutOfRange(name='w', value=w, bounds=f'[0, {n}]')
    if w == 0:
        return fill
    p = w / n
    return -p * math.log2(p)


@dataclass(frozen=True, eq=False)
class EntropyMatrix:
    values: np.ndarray
    fill: float = SENTINEL
    empty_rows: Tuple[int, ...] = ()

    @property
    def shape(self):
        return self.values.shape

    def transposed(self):
        return self.values.T


def build_entropy_matrix(
    token_lists: Sequence[Sequence[str]],
    vocab: Vocabulary,
    fill: float = SENTINEL,
) -> EntropyMatrix:
    M = np.full((len(token_lists), len(vocab)), fill, dtype=np.float64)
    empty: List[int] = []
    for i, tokens in enumerate(token_lists):
        n = len(tokens)
        if n == 0:
            empty.append(i)
            continue
        for word, w in Counter(tokens).items():
            j = vocab.index.get(word)
            if j is not None:
                M[i, j] = entropy_value(w, n, fill)
    if empty:
        logger.warning('%i questions have no tokens; their rows hold only the fill value', len(empty))
    return EntropyMatrix(M, fill, tuple(empty))


def fit_entropy_embedding(
    token_lists: Sequence[Sequence[str]],
    vocab: Vocabulary,
    k: int = 200,
    seed: int = 0,
    fill: float = SENTINEL,
    averaging: str = SET,
    svd_method: str = EXACT,
) -> EmbeddingModel:
    if k < 1:
        raise RankOutOfRange(k=k, limit='min(V, N)')
    matrix = build_entropy_matrix(token_lists, vocab, fill)
    N, V = matrix.shape
    rank = min(k, V, N)
    if rank < k:
        logger.info('entropy embedding dim clamped from %i to %i (V=%i, N=%i)', k, rank, V, N)
    factors = truncated_svd(matrix.transposed(), rank, seed=seed, method=svd_method)
    return EmbeddingModel(
        ENTROPY,
        vocab,
        rank,
        word_vectors=factors.scaled_rows(),
        idf=inverse_document_frequency(token_lists, vocab),
        averaging=averaging,
    )
