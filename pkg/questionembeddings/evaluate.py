"""
F1 metrics, per-class classification reports and k-fold cross-validation.

Cross-validation fits everything on the training folds only: the vocabulary,
the embedding (including its SVD) and the classifier never see held-out
questions. Reports are produced per fold and once more over the pooled
out-of-fold predictions.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .baselines import DEFAULT_WINDOW
from .classify import Hyperparams, predict_batch, train_ovr_logreg
from .corpus import PLAIN, Corpus, split_folds
from .embed import embed_questions, fit_embedding
from .entropy import SENTINEL
from .errors import LengthMismatch, UnknownLabel, ValueOutOfRange
from .preprocess import PreprocessConfig, build_vocabulary, preprocess_corpus
from .utils import derive_seed
from .vectors import SET, EmbeddingModel

logger = logging.getLogger(__name__)


def f1_score(precision: float, recall: float) -> float:
    for name, value in (('precision', precision), ('recall', recall)):
        if not 0.0 <= value <= 1.0:
            raise ValueOutOfRange(name=name, value=value, bounds='[0, 1]')
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


@dataclass(frozen=True)
class ClassScore:
    label: str
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class EvalReport:
    classes: Tuple[ClassScore, ...]
    macro_f1: float
    weighted_f1: float
    total: int

    @classmethod
    def from_class_scores(cls, scores: Sequence[ClassScore]):
        scores = tuple(scores)
        total = sum(s.support for s in scores)
        macro = sum(s.f1 for s in scores) / len(scores) if scores else 0.0
        weighted = sum(s.support * s.f1 for s in scores) / total if total else 0.0
        return cls(scores, macro, weighted, total)

    def __getitem__(self, label) -> ClassScore:
        for score in self.classes:
            if score.label == label:
                return score
        raise KeyError(label)


def _ratio(num, den):
    return num / den if den else 0.0


def classification_report(
    y_true: Sequence[str],
    y_pred: Sequence[str],
    classes: Sequence[str],
) -> EvalReport:
    if len(y_true) != len(y_pred):
        raise LengthMismatch(expected=len(y_true), received=len(y_pred))
    known = set(classes)
    tp = dict.fromkeys(classes, 0)
    fp = dict.fromkeys(classes, 0)
    fn = dict.fromkeys(classes, 0)
    for t, p in zip(y_true, y_pred):
        for label in (t, p):
            if label not in known:
                raise UnknownLabel(label=label)
        if t == p:
            tp[t] += 1
        else:
            fp[p] += 1
            fn[t] += 1

    scores = []
    for c in classes:
        precision = _ratio(tp[c], tp[c] + fp[c])
        recall = _ratio(tp[c], tp[c] + fn[c])
        scores.append(ClassScore(c, precision, recall, f1_score(precision, recall), tp[c] + fn[c]))
    return EvalReport.from_class_scores(scores)


@dataclass(frozen=True)
class CVResult:
    folds: Tuple[EvalReport, ...]
    pooled: EvalReport
    fingerprint: Dict[str, object]
    predictions: Tuple[str, ...] = ()
    dims: Tuple[int, ...] = ()
    warnings: Tuple[str, ...] = field(default=())


@dataclass(frozen=True)
class _FoldOutcome:
    test_indices: List[int]
    predictions: List[str]
    report: EvalReport
    dim: int
    warnings: List[str]


def _run_fold(fold, plan, corpus, token_lists, method, dim, hp, seed, options) -> _FoldOutcome:
    train_idx, test_idx = plan.train_indices(fold), plan.test_indices(fold)
    train_tokens = [token_lists[i] for i in train_idx]
    test_tokens = [token_lists[i] for i in test_idx]
    y_train = [corpus.questions[i].label for i in train_idx]
    y_test = [corpus.questions[i].label for i in test_idx]
    fold_seed = derive_seed(seed, fold)

    vocab = build_vocabulary(train_tokens)
    model = fit_embedding(method, train_tokens, vocab, dim, seed=fold_seed, **options)
    X_train, _ = embed_questions(model, train_tokens)
    X_test, _ = embed_questions(model, test_tokens)

    warnings = []
    missing = [c for c in corpus.labels if c not in set(y_train)]
    if missing:
        warnings.append(f'fold {fold + 1}: training part has no questions of {", ".join(missing)}')
        logger.warning(warnings[-1])

    present = [c for c in corpus.labels if c not in missing]
    if len(present) < 2:
        predictions = [present[0]] * len(test_idx)
    else:
        fold_hp = Hyperparams(hp.l2, hp.lr, hp.max_epochs, hp.tol, fold_seed)
        classifier = train_ovr_logreg(X_train, y_train, fold_hp, classes=corpus.labels)
        predictions, _ = predict_batch(classifier, X_test)

    report = classification_report(y_test, predictions, corpus.labels)
    logger.info('fold %i/%i: weighted F1 %.4f', fold + 1, plan.k, report.weighted_f1)
    return _FoldOutcome(test_idx, list(predictions), report, model.dim, warnings)


def cross_validate(
    corpus: Corpus,
    config: PreprocessConfig,
    method: str = 'entropy',
    dim: int = 200,
    hp: Optional[Hyperparams] = None,
    k: int = 5,
    seed: int = 42,
    window: int = DEFAULT_WINDOW,
    fill: float = SENTINEL,
    averaging: str = SET,
    strategy: str = PLAIN,
    external: Optional[EmbeddingModel] = None,
    workers: int = 1,
) -> CVResult:
    hp = hp or Hyperparams()
    token_lists = preprocess_corpus(corpus.texts, config)
    plan = split_folds(len(corpus), corpus.targets, k, seed, strategy)
    options = {'window': window, 'fill': fill, 'averaging': averaging, 'external': external}

    def run(fold):
        return _run_fold(fold, plan, corpus, token_lists, method, dim, hp, seed, options)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, range(k)))
    else:
        outcomes = [run(fold) for fold in range(k)]

    predictions: List[Optional[str]] = [None] * len(corpus)
    for outcome in outcomes:
        for i, label in zip(outcome.test_indices, outcome.predictions):
            predictions[i] = label
    pooled = classification_report(corpus.targets, predictions, corpus.labels)

    fingerprint = {'method': method, 'dim': dim, 'seed': seed, 'k': k, 'strategy': strategy}
    return CVResult(
        folds=tuple(o.report for o in outcomes),
        pooled=pooled,
        fingerprint=fingerprint,
        predictions=tuple(predictions),
        dims=tuple(o.dim for o in outcomes),
        warnings=tuple(w for o in outcomes for w in o.warnings),
    )


def compare_methods(corpus: Corpus, config: PreprocessConfig, methods: Sequence[str], **kwargs):
    """Cross-validate several methods with identical folds; keeps the given order."""
    return {method: cross_validate(corpus, config, method, **kwargs) for method in methods}
