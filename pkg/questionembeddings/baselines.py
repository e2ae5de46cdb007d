"""Baseline vectorizers: TF-IDF weights and positive-PMI word vectors."""

import logging
from typing import Sequence

import numpy as np

from .errors import DegenerateCorpus, InvalidOption, RankOutOfRange
from .numerics import EXACT, truncated_svd
from .preprocess import Vocabulary
from .vectors import PMI_VSM, SET, TFIDF, EmbeddingModel

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = 2


def document_frequency(token_lists: Sequence[Sequence[str]], vocab: Vocabulary):
    df = np.zeros(len(vocab), dtype=np.float64)
    for tokens in token_lists:
        for word in set(tokens):
            j = vocab.index.get(word)
            if j is not None:
                df[j] += 1
    return df


def inverse_document_frequency(token_lists: Sequence[Sequence[str]], vocab: Vocabulary):
    """``ln(|D| / f_wD)``; words that never occur get weight 0."""
    df = document_frequency(token_lists, vocab)
    idf = np.zeros_like(df)
    seen = df > 0
    idf[seen] = np.log(len(token_lists) / df[seen])
    return idf


def fit_tfidf(token_lists: Sequence[Sequence[str]], vocab: Vocabulary) -> EmbeddingModel:
    if not token_lists:
        raise DegenerateCorpus(reason='no questions to fit tf-idf on')
    idf = inverse_document_frequency(token_lists, vocab)
    return EmbeddingModel(TFIDF, vocab, len(vocab), idf=idf)


def cooccurrence_counts(
    token_lists: Sequence[Sequence[str]],
    vocab: Vocabulary,
    window: int = DEFAULT_WINDOW,
):
    """Symmetric counts of word pairs at most ``window`` positions apart."""
    V = len(vocab)
    F = np.zeros((V, V), dtype=np.float64)
    for tokens in token_lists:
        ids = [vocab.index[t] for t in tokens if t in vocab.index]
        for i, a in enumerate(ids):
            for b in ids[i + 1:i + 1 + window]:
                F[a, b] += 1
                F[b, a] += 1
    return F


def positive_pmi(F):
    total = F.sum()
    if total <= 0:
        raise DegenerateCorpus(reason='no word co-occurs with another inside the window')
    rows = F.sum(axis=1) / total
    cols = F.sum(axis=0) / total
    expected = np.outer(rows, cols)
    X = np.zeros_like(F)
    seen = F > 0
    X[seen] = np.log((F[seen] / total) / expected[seen])
    X[X < 0] = 0.0
    return X


def fit_pmi_vsm(
    token_lists: Sequence[Sequence[str]],
    vocab: Vocabulary,
    h: int = DEFAULT_WINDOW,
    k: int = 200,
    seed: int = 0,
    averaging: str = SET,
    svd_method: str = EXACT,
) -> EmbeddingModel:
    if h < 1:
        raise InvalidOption(option='window', value=h, reason='must be >= 1')
    if k < 1:
        raise RankOutOfRange(k=k, limit=len(vocab))
    X = positive_pmi(cooccurrence_counts(token_lists, vocab, h))
    rank = min(k, len(vocab))
    if rank < k:
        logger.info('pmi-vsm dim clamped from %i to %i (V=%i)', k, rank, len(vocab))
    factors = truncated_svd(X, rank, seed=seed, method=svd_method)
    return EmbeddingModel(
        PMI_VSM,
        vocab,
        rank,
        word_vectors=factors.scaled_rows(),
        idf=inverse_document_frequency(token_lists, vocab),
        averaging=averaging,
    )
