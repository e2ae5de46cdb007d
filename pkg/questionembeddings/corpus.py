"""
Labeled question corpora and deterministic cross-validation folds.

A corpus file is UTF-8 with a header row naming the ``text`` and ``label``
columns. TSV (the default) is read without quoting, because question text
routinely contains commas; CSV follows RFC 4180 quoting.
"""

import csv
import logging
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from sklearn.model_selection import KFold, StratifiedKFold

from .errors import (
    EmptyCorpus,
    EmptyLabel,
    EmptyText,
    InvalidFoldCount,
    InvalidOption,
    LengthMismatch,
    MalformedRow,
    MissingColumns,
    MissingFile,
    UnexpectedColumns,
    UnknownLabel,
)

logger = logging.getLogger(__name__)

COLUMNS = ('text', 'label')
FORMATS = ('tsv', 'csv')

PLAIN = 'plain-shuffled'
STRATIFIED = 'stratified'
STRATEGIES = (PLAIN, STRATIFIED)


@dataclass(frozen=True)
class LabeledQuestion:
    id: int
    text: str
    label: str


@dataclass(frozen=True)
class Corpus:
    questions: Tuple[LabeledQuestion, ...]
    labels: Tuple[str, ...]

    def __post_init__(self):
        known = set(self.labels)
        for i, q in enumerate(self.questions):
            if q.id != i:
                raise LengthMismatch(expected=i, received=q.id)
            if not q.text.strip():
                raise EmptyText(line=i + 2, path='<memory>')
            if q.label not in known:
                raise UnknownLabel(label=q.label)
        unused = known - {q.label for q in self.questions}
        if unused:
            raise UnknownLabel(label=sorted(unused)[0])

    @classmethod
    def from_records(cls, texts: Sequence[str], labels: Sequence[str]):
        if len(texts) != len(labels):
            raise LengthMismatch(expected=len(texts), received=len(labels))
        if not texts:
            raise EmptyCorpus(path='<memory>')
        questions = tuple(
            LabeledQuestion(i, t, l) for i, (t, l) in enumerate(zip(texts, labels))
        )
        return cls(questions, tuple(dict.fromkeys(labels)))

    def __len__(self):
        return len(self.questions)

    @property
    def texts(self) -> List[str]:
        return [q.text for q in self.questions]

    @property
    def targets(self) -> List[str]:
        return [q.label for q in self.questions]


def load_corpus(path, format: str = 'tsv') -> Corpus:
    path = Path(path)
    if format not in FORMATS:
        raise InvalidOption(option='format', value=format, reason='expected tsv or csv')
    if not path.exists():
        raise MissingFile(path=str(path))

    options = {
        'dtype': str,
        'encoding': 'utf-8',
        'keep_default_na': False,
        'na_filter': False,
        'skip_blank_lines': False,
    }
    if format == 'tsv':
        options.update(sep='\t', quoting=csv.QUOTE_NONE)
    else:
        options.update(sep=',')

    try:
        df = pd.read_csv(path, **options)
    except pd.errors.EmptyDataError as e:
        raise EmptyCorpus(path=str(path)) from e
    except pd.errors.ParserError as e:
        raise MalformedRow(line='?', path=str(path), reason=str(e).strip()) from e

    columns = [str(c) for c in df.columns]
    missing = [c for c in COLUMNS if c not in columns]
    if missing:
        raise MissingColumns(expected=list(COLUMNS), received=columns)
    extra = [c for c in columns if c not in COLUMNS]
    if extra:
        raise UnexpectedColumns(received=extra)
    if df.empty:
        raise EmptyCorpus(path=str(path))

    df = df.fillna('')
    texts, labels = [], []
    # line 1 is the header
    for line, (text, label) in enumerate(zip(df['text'], df['label']), start=2):
        if not str(text).strip() and not str(label).strip():
            continue
        if not str(text).strip():
            raise EmptyText(line=line, path=str(path))
        if not str(label).strip():
            raise EmptyLabel(line=line, path=str(path))
        texts.append(str(text))
        labels.append(str(label).strip())
    if not texts:
        raise EmptyCorpus(path=str(path))

    corpus = Corpus.from_records(texts, labels)
    logger.info(
        'loaded %i questions with %i labels from %s',
        len(corpus), len(corpus.labels), path,
    )
    return corpus


def class_distribution(corpus: Corpus) -> Dict[str, int]:
    counts = Counter(q.label for q in corpus.questions)
    return {label: counts[label] for label in corpus.labels}


def underrepresented_classes(distribution: Dict[str, int], ratio: float = 0.5) -> List[str]:
    """Labels whose count is below ``ratio`` times the mean class count."""
    if not distribution:
        return []
    mean = sum(distribution.values()) / len(distribution)
    return [label for label, count in distribution.items() if count < ratio * mean]


@dataclass(frozen=True)
class FoldPlan:
    k: int
    assignment: Tuple[int, ...]
    seed: int
    strategy: str

    def test_indices(self, fold: int) -> List[int]:
        return [i for i, f in enumerate(self.assignment) if f == fold]

    def train_indices(self, fold: int) -> List[int]:
        return [i for i, f in enumerate(self.assignment) if f != fold]

    def sizes(self) -> List[int]:
        counts = Counter(self.assignment)
        return [counts[f] for f in range(self.k)]


def split_folds(
    n: int,
    labels: Optional[Sequence[str]],
    k: int,
    seed: int = 42,
    strategy: str = PLAIN,
) -> FoldPlan:
    if k < 2 or k > n:
        raise InvalidFoldCount(k=k, n=n)
    if strategy not in STRATEGIES:
        raise InvalidOption(option='strategy', value=strategy, reason=f'expected one of {STRATEGIES}')

    if strategy == PLAIN:
        splits = KFold(n_splits=k, shuffle=True, random_state=seed).split(np.zeros(n))
    else:
        if labels is None or len(labels) != n:
            raise LengthMismatch(expected=n, received=None if labels is None else len(labels))
        splitter = StratifiedKFold(n_splits=k, shuffle=True, random_state=seed)
        try:
            splits = list(splitter.split(np.zeros(n), np.asarray(labels)))
        except ValueError as e:
            raise InvalidFoldCount(k=k, n=n) from e

    assignment = np.empty(n, dtype=np.int64)
    for fold, (_, test) in enumerate(splits):
        assignment[test] = fold

    return FoldPlan(k, tuple(int(f) for f in assignment), seed, strategy)
