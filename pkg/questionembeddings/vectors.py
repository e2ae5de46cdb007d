"""
Fitted embedding models and their on-disk forms.

Two formats live here: the plain word-vector text format (``V d`` header,
then ``word v1 ... vd`` rows) shared with external embedding tools, and a
versioned JSON container that also keeps the fitted vectorizer's kind,
averaging mode and idf table.
"""

import json
import logging
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .errors import (
    CorruptModel,
    DuplicateWord,
    InvalidOption,
    MalformedHeader,
    MalformedRow,
    MissingFile,
    ShapeMismatch,
    UnknownModelVersion,
)
from .preprocess import Vocabulary
from .utils import ensure_finite, format_float

logger = logging.getLogger(__name__)

ENTROPY = 'entropy'
TFIDF = 'tfidf'
PMI_VSM = 'pmi-vsm'
EXTERNAL = 'external'
KINDS = (ENTROPY, TFIDF, PMI_VSM, EXTERNAL)
VECTOR_KINDS = (ENTROPY, PMI_VSM, EXTERNAL)

SET = 'set'
MULTISET = 'multiset'
IDF = 'idf'
AVERAGING = (SET, MULTISET, IDF)

EMBEDDING_FORMAT = 'questionembeddings.embedding'
FORMAT_VERSION = 1


@dataclass(frozen=True, eq=False)
class EmbeddingModel:
    kind: str
    vocabulary: Vocabulary
    dim: int
    word_vectors: Optional[np.ndarray] = None
    idf: Optional[np.ndarray] = None
    averaging: str = SET

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidOption(option='method', value=self.kind, reason=f'expected one of {KINDS}')
        if self.averaging not in AVERAGING:
            raise InvalidOption(
                option='averaging', value=self.averaging, reason=f'expected one of {AVERAGING}',
            )
        V = len(self.vocabulary)
        if self.kind in VECTOR_KINDS:
            if self.word_vectors is None or self.word_vectors.shape != (V, self.dim):
                received = None if self.word_vectors is None else self.word_vectors.shape
                raise ShapeMismatch(expected=(V, self.dim), received=received)
        elif self.dim != V or self.idf is None:
            raise ShapeMismatch(expected=(V,), received=self.dim)
        if self.idf is not None and (self.idf.shape != (V,) or np.any(self.idf < 0)):
            raise ShapeMismatch(expected=(V,), received=self.idf.shape)
        if self.averaging == IDF and self.idf is None:
            raise InvalidOption(
                option='averaging', value=IDF, reason=f'{self.kind} model has no idf table',
            )

    def with_averaging(self, averaging):
        return replace(self, averaging=averaging)


def load_external_vectors(path) -> EmbeddingModel:
    path = Path(path)
    if not path.exists():
        raise MissingFile(path=str(path))
    with path.open('r', encoding='utf-8') as fp:
        header = fp.readline().split()
        try:
            count, dim = (int(x) for x in header)
        except ValueError:
            raise MalformedHeader(path=str(path), reason='expected "V d"') from None
        if count < 1 or dim < 1:
            raise MalformedHeader(path=str(path), reason='V and d must be positive')

        words, rows, seen = [], [], set()
        for line_no, line in enumerate(fp, start=2):
            fields = line.split()
            if not fields:
                continue
            word, values = fields[0], fields[1:]
            if len(values) != dim:
                raise MalformedRow(
                    line=line_no, path=str(path),
                    reason=f'expected {dim} values, saw {len(values)}',
                )
            if word in seen:
                raise DuplicateWord(word=word, line=line_no, path=str(path))
            try:
                rows.append([float(v) for v in values])
            except ValueError:
                raise MalformedRow(line=line_no, path=str(path), reason='not a float') from None
            seen.add(word)
            words.append(word)

    if len(words) != count:
        raise MalformedHeader(path=str(path), reason=f'header announces {count} rows, saw {len(words)}')

    # the model indexes words in code-point order, like a fitted vocabulary
    order = sorted(range(len(words)), key=words.__getitem__)
    vectors = ensure_finite(np.array(rows)[order], str(path))
    vocabulary = Vocabulary(tuple(words[i] for i in order))
    logger.info('loaded %i external vectors of dim %i from %s', count, dim, path)
    return EmbeddingModel(EXTERNAL, vocabulary, dim, word_vectors=vectors)


def export_vectors(path, words: Sequence[str], vectors):
    vectors = ensure_finite(vectors, 'exported vectors')
    if vectors.ndim != 2 or vectors.shape[0] != len(words):
        raise ShapeMismatch(expected=(len(words), 'd'), received=vectors.shape)
    with Path(path).open('w', encoding='utf-8') as fp:
        fp.write(f'{vectors.shape[0]} {vectors.shape[1]}\n')
        for word, row in zip(words, vectors):
            fp.write(word + ' ' + ' '.join(format_float(v) for v in row) + '\n')


def _dump_array(a):
    return None if a is None else a.tolist()


def save_embedding(path, model: EmbeddingModel):
    payload = {
        'format': EMBEDDING_FORMAT,
        'version': FORMAT_VERSION,
        'kind': model.kind,
        'dim': model.dim,
        'averaging': model.averaging,
        'vocabulary': list(model.vocabulary.words),
        'word_vectors': _dump_array(model.word_vectors),
        'idf': _dump_array(model.idf),
    }
    with Path(path).open('w', encoding='utf-8') as fp:
        json.dump(payload, fp, ensure_ascii=False)


def read_container(path, expected_format):
    """Load a JSON model container and check its format/version header."""
    path = Path(path)
    if not path.exists():
        raise MissingFile(path=str(path))
    with path.open('r', encoding='utf-8') as fp:
        try:
            payload = json.load(fp)
        except json.JSONDecodeError as e:
            raise CorruptModel(path=str(path), reason=str(e)) from e
    if not isinstance(payload, dict):
        raise CorruptModel(path=str(path), reason='top level is not an object')
    fmt, version = payload.get('format'), payload.get('version')
    if fmt != expected_format or version != FORMAT_VERSION:
        raise UnknownModelVersion(path=str(path), format=fmt, version=version)
    return payload


def load_embedding(path) -> EmbeddingModel:
    payload = read_container(path, EMBEDDING_FORMAT)
    try:
        vectors = payload['word_vectors']
        idf = payload['idf']
        return EmbeddingModel(
            kind=payload['kind'],
            vocabulary=Vocabulary(tuple(payload['vocabulary'])),
            dim=int(payload['dim']),
            word_vectors=None if vectors is None else ensure_finite(vectors, str(path)).reshape(
                len(payload['vocabulary']), int(payload['dim'])),
            idf=None if idf is None else ensure_finite(idf, str(path)),
            averaging=payload.get('averaging', SET),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise CorruptModel(path=str(path), reason=str(e)) from e
