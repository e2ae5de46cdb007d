"""
One-vs-rest logistic regression trained by full-batch gradient descent.

Each class gets an independent binary model on the L2-regularized mean
negative log-likelihood (the bias is not regularized). Weights start at
zero and the step size is halved whenever a step would raise the loss, so
the per-class loss history never increases.
"""

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.special import expit

from .errors import (
    CorruptModel,
    InvalidOption,
    LengthMismatch,
    ShapeMismatch,
    SingleClass,
)
from .utils import derive_seed, ensure_finite
from .vectors import FORMAT_VERSION, read_container

logger = logging.getLogger(__name__)

CLASSIFIER_FORMAT = 'questionembeddings.classifier'

MIN_LEARNING_RATE = 1e-12


@dataclass(frozen=True)
class Hyperparams:
    l2: float = 1e-4
    lr: float = 0.1
    max_epochs: int = 1000
    tol: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.l2 < 0:
            raise InvalidOption(option='l2', value=self.l2, reason='must be >= 0')
        if self.lr <= 0:
            raise InvalidOption(option='lr', value=self.lr, reason='must be > 0')
        if self.max_epochs < 1:
            raise InvalidOption(option='max_epochs', value=self.max_epochs, reason='must be >= 1')
        if self.tol <= 0:
            raise InvalidOption(option='tol', value=self.tol, reason='must be > 0')


@dataclass(frozen=True, eq=False)
class LogRegModel:
    classes: Tuple[str, ...]
    weights: np.ndarray
    hyperparams: Hyperparams
    loss_history: Tuple[Tuple[float, ...], ...] = ()

    @property
    def dim(self):
        return self.weights.shape[1] - 1


def binary_objective(w, b, X, y, l2):
    """Loss and gradient of ``mean(log(1 + e^z) - y z) + l2/2 |w|^2`` with ``z = Xw + b``."""
    z = X @ w + b
    loss = np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * l2 * (w @ w)
    residual = expit(z) - y
    grad_w = X.T @ residual / len(y) + l2 * w
    grad_b = residual.mean()
    return float(loss), grad_w, float(grad_b)


def fit_binary(X, y, hp: Hyperparams):
    w = np.zeros(X.shape[1])
    b = 0.0
    lr = hp.lr
    loss, grad_w, grad_b = binary_objective(w, b, X, y, hp.l2)
    history = [loss]
    for epoch in range(hp.max_epochs):
        if np.sqrt(grad_w @ grad_w + grad_b * grad_b) < hp.tol:
            break
        while lr >= MIN_LEARNING_RATE:
            w_new, b_new = w - lr * grad_w, b - lr * grad_b
            loss_new, gw_new, gb_new = binary_objective(w_new, b_new, X, y, hp.l2)
            if loss_new <= loss:
                break
            lr /= 2
        else:
            logger.debug('step size underflow after %i epochs', epoch)
            break
        w, b = w_new, b_new
        loss, grad_w, grad_b = loss_new, gw_new, gb_new
        history.append(loss)
    return w, b, history


def train_ovr_logreg(
    X,
    labels: Sequence[str],
    hp: Optional[Hyperparams] = None,
    classes: Optional[Sequence[str]] = None,
    workers: int = 1,
) -> LogRegModel:
    hp = hp or Hyperparams()
    X = ensure_finite(X, 'classifier features')
    if X.ndim != 2:
        raise ShapeMismatch(expected='N x d matrix', received=X.shape)
    if X.shape[0] != len(labels):
        raise LengthMismatch(expected=X.shape[0], received=len(labels))
    present = list(dict.fromkeys(labels))
    classes = tuple(c for c in classes if c in present) if classes else tuple(present)
    if len(classes) < 2:
        raise SingleClass(labels=list(classes))

    labels = np.asarray(labels, dtype=object)

    def fit(item):
        index, c = item
        class_hp = Hyperparams(hp.l2, hp.lr, hp.max_epochs, hp.tol, derive_seed(hp.seed, index))
        w, b, history = fit_binary(X, (labels == c).astype(np.float64), class_hp)
        logger.debug('class %s: %i epochs, final loss %.6g', c, len(history) - 1, history[-1])
        return np.append(w, b), tuple(history)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            fitted = list(pool.map(fit, enumerate(classes)))
    else:
        fitted = [fit(item) for item in enumerate(classes)]

    weights = np.vstack([row for row, _ in fitted])
    return LogRegModel(classes, weights, hp, tuple(h for _, h in fitted))


def decision_scores(model: LogRegModel, X):
    X = np.atleast_2d(ensure_finite(X, 'features'))
    if X.shape[1] != model.dim:
        raise ShapeMismatch(expected=model.dim, received=X.shape[1])
    return expit(X @ model.weights[:, :-1].T + model.weights[:, -1])


def predict(model: LogRegModel, x):
    x = np.asarray(getattr(x, 'values', x), dtype=np.float64)
    if x.ndim != 1:
        raise ShapeMismatch(expected=(model.dim,), received=x.shape)
    scores = decision_scores(model, x)[0]
    return model.classes[int(np.argmax(scores))], scores


def predict_batch(model: LogRegModel, X):
    scores = decision_scores(model, X)
    return [model.classes[i] for i in np.argmax(scores, axis=1)], scores


def save_classifier(path, model: LogRegModel):
    payload = {
        'format': CLASSIFIER_FORMAT,
        'version': FORMAT_VERSION,
        'classes': list(model.classes),
        'dim': model.dim,
        'weights': model.weights.tolist(),
        'hyperparams': asdict(model.hyperparams),
    }
    with Path(path).open('w', encoding='utf-8') as fp:
        json.dump(payload, fp, ensure_ascii=False)


def load_classifier(path) -> LogRegModel:
    payload = read_container(path, CLASSIFIER_FORMAT)
    try:
        classes = tuple(payload['classes'])
        weights = ensure_finite(payload['weights'], str(path))
        if weights.shape != (len(classes), int(payload['dim']) + 1):
            raise CorruptModel(path=str(path), reason=f'weight matrix has shape {weights.shape}')
        return LogRegModel(classes, weights, Hyperparams(**payload['hyperparams']))
    except CorruptModel:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise CorruptModel(path=str(path), reason=str(e)) from e
