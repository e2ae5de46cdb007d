"""
Question vectors from fitted embedding models.

Vector-based models average the word vectors of a question's in-vocabulary
words; by default each distinct word counts once. TF-IDF models produce the
weighted term vector over the whole vocabulary instead.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .baselines import DEFAULT_WINDOW, fit_pmi_vsm, fit_tfidf
from .entropy import SENTINEL, fit_entropy_embedding
from .errors import InvalidOption, MissingOption, ShapeMismatch
from .numerics import truncated_svd
from .preprocess import Vocabulary
from .vectors import (
    ENTROPY,
    EXTERNAL,
    IDF,
    MULTISET,
    PMI_VSM,
    SET,
    TFIDF,
    EmbeddingModel,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class QuestionVector:
    values: np.ndarray
    empty: bool = False

    def __len__(self):
        return len(self.values)


def _vector_mean(model: EmbeddingModel, tokens):
    index = model.vocabulary.index
    known = [index[t] for t in tokens if t in index]
    if model.averaging == MULTISET:
        rows = sorted(known)
    else:
        rows = sorted(set(known))
    if not rows:
        return np.zeros(model.dim), True
    vectors = model.word_vectors[rows]
    if model.averaging == IDF:
        weights = model.idf[rows]
        if weights.sum() > 0:
            return weights @ vectors / weights.sum(), False
    return vectors.mean(axis=0), False


def _tfidf_vector(model: EmbeddingModel, tokens):
    index = model.vocabulary.index
    values = np.zeros(model.dim)
    counts = Counter(t for t in tokens if t in index)
    for word, count in counts.items():
        j = index[word]
        values[j] = count * model.idf[j]
    return values, not counts


def embed_question(model: EmbeddingModel, tokens: Sequence[str]) -> QuestionVector:
    if model.kind == TFIDF:
        values, empty = _tfidf_vector(model, tokens)
    else:
        values, empty = _vector_mean(model, tokens)
    return QuestionVector(values, empty)


def embed_questions(model: EmbeddingModel, token_lists: Sequence[Sequence[str]]):
    """Stack question vectors into an ``N x d`` matrix plus the empty flags."""
    X = np.zeros((len(token_lists), model.dim))
    empty = np.zeros(len(token_lists), dtype=bool)
    for i, tokens in enumerate(token_lists):
        q = embed_question(model, tokens)
        X[i], empty[i] = q.values, q.empty
    if empty.any():
        logger.debug('%i of %i questions embed to the zero vector', empty.sum(), len(empty))
    return X, empty


def project_2d(vectors: Sequence, seed: int = 0) -> List[Tuple[float, float]]:
    if len(vectors) < 2:
        raise ShapeMismatch(expected='at least 2 vectors', received=len(vectors))
    X = np.vstack([np.asarray(getattr(v, 'values', v), dtype=np.float64) for v in vectors])
    if X.shape[1] < 2:
        raise ShapeMismatch(expected='dim >= 2', received=X.shape[1])
    centered = X - X.mean(axis=0)
    coords = truncated_svd(centered, 2, seed=seed).scaled_rows()
    return [(float(x), float(y)) for x, y in coords]


def fit_embedding(
    method: str,
    token_lists: Sequence[Sequence[str]],
    vocab: Vocabulary,
    dim: int = 200,
    window: int = DEFAULT_WINDOW,
    fill: float = SENTINEL,
    averaging: str = SET,
    seed: int = 0,
    external: Optional[EmbeddingModel] = None,
) -> EmbeddingModel:
    if method == ENTROPY:
        return fit_entropy_embedding(token_lists, vocab, dim, seed, fill=fill, averaging=averaging)
    if method == TFIDF:
        return fit_tfidf(token_lists, vocab)
    if method == PMI_VSM:
        return fit_pmi_vsm(token_lists, vocab, window, dim, seed, averaging=averaging)
    if method == EXTERNAL:
        if external is None:
            raise MissingOption(option='vectors', reason='method is external')
        return external.with_averaging(averaging)
    raise InvalidOption(option='method', value=method, reason='unknown embedding method')
