"""
Command line entry point.

Subcommands: ``eval`` (cross-validated comparison), ``train``, ``predict``,
``embed`` and ``project``. Settings resolve as flags > ``--config`` JSON file
> built-in defaults. Exit codes: 0 success, 2 usage/config error, 3 data or
model format error, 4 numeric failure.
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from .classify import (
    Hyperparams,
    load_classifier,
    predict,
    save_classifier,
    train_ovr_logreg,
)
from .config import Config
from .corpus import PLAIN, STRATIFIED, class_distribution, load_corpus
from .embed import embed_question, embed_questions, fit_embedding, project_2d
from .errors import (
    EXIT_NUMERIC,
    EXIT_OK,
    EXIT_USAGE,
    CorruptModel,
    Error,
    InvalidOption,
    MissingOption,
)
from .evaluate import compare_methods
from .preprocess import (
    PreprocessConfig,
    build_vocabulary,
    load_preprocess_config,
    load_stopwords,
    preprocess_corpus,
    preprocess_question,
    save_preprocess_config,
)
from .report import Report
from .rules import load_rules
from .vectors import (
    AVERAGING,
    EXTERNAL,
    KINDS,
    MULTISET,
    TFIDF,
    export_vectors,
    load_embedding,
    load_external_vectors,
    save_embedding,
)

logger = logging.getLogger(__name__)

EMBEDDING_FILE = 'embedding.json'
CLASSIFIER_FILE = 'classifier.json'
PREPROCESS_FILE = 'preprocess.json'

COMMANDS = ('eval', 'train', 'predict', 'embed', 'project')
NEEDS_DATA = ('eval', 'train', 'project')
NEEDS_MODEL = ('predict', 'embed')

# flag name -> dotted config path
FLAG_PATHS = {
    'data': 'data.path',
    'format': 'data.format',
    'stopwords': 'preprocess.stopwords',
    'custom_stopwords': 'preprocess.custom_stopwords',
    'rules': 'preprocess.rules',
    'keep_digits': 'preprocess.keep_digits',
    'script': 'preprocess.script',
    'normalizer': 'preprocess.normalizer',
    'method': 'embedding.method',
    'dim': 'embedding.dim',
    'window': 'embedding.window',
    'fill': 'embedding.fill',
    'averaging': 'embedding.averaging',
    'vectors': 'embedding.vectors',
    'folds': 'folds.k',
    'seed': 'folds.seed',
    'stratified': 'folds.stratified',
    'workers': 'folds.workers',
    'l2': 'classifier.l2',
    'lr': 'classifier.lr',
    'max_epochs': 'classifier.max_epochs',
    'tol': 'classifier.tol',
    'out': 'output.dir',
}


def _nested(path, value):
    keys = path.split('.')
    d = value
    for key in reversed(keys):
        d = {key: d}
    return d


@dataclass(frozen=True)
class RunConfig:
    command: str
    data: Optional[Path]
    format: str
    stopwords: Optional[Path]
    custom_stopwords: Optional[Path]
    rules: Optional[Path]
    keep_digits: bool
    script: Optional[str]
    normalizer: str
    method: str
    dim: int
    window: int
    fill: float
    averaging: str
    vectors: Optional[Path]
    folds: int
    seed: int
    stratified: bool
    workers: int
    hyperparams: Hyperparams
    out: Path
    compare: Tuple[str, ...] = ()
    model: Optional[Path] = None
    question: Optional[str] = None
    words: bool = False

    @classmethod
    def from_config(cls, command, config: Config, model=None, question=None, words=False):
        def path(p):
            value = config.get(p)
            return Path(value) if isinstance(value, str) and value else None

        compare = config.get('compare') or []
        if isinstance(compare, str):
            compare = [m for m in compare.split(',') if m]

        rc = cls(
            command=command,
            data=path('data.path'),
            format=config.get('data.format'),
            stopwords=path('preprocess.stopwords'),
            custom_stopwords=path('preprocess.custom_stopwords'),
            rules=path('preprocess.rules'),
            keep_digits=config.get('preprocess.keep_digits') is True,
            script=config.get('preprocess.script') or None,
            normalizer=config.get('preprocess.normalizer'),
            method=config.get('embedding.method'),
            dim=int(config.get('embedding.dim')),
            window=int(config.get('embedding.window')),
            fill=float(config.get('embedding.fill')),
            averaging=config.get('embedding.averaging'),
            vectors=path('embedding.vectors'),
            folds=int(config.get('folds.k')),
            seed=int(config.get('folds.seed')),
            stratified=config.get('folds.stratified') is True,
            workers=int(config.get('folds.workers')),
            hyperparams=Hyperparams(
                l2=float(config.get('classifier.l2')),
                lr=float(config.get('classifier.lr')),
                max_epochs=int(config.get('classifier.max_epochs')),
                tol=float(config.get('classifier.tol')),
                seed=int(config.get('folds.seed')),
            ),
            out=Path(config.get('output.dir')),
            compare=tuple(compare),
            model=Path(model) if model else None,
            question=question,
            words=words,
        )
        rc.validate()
        return rc

    @property
    def methods(self):
        return tuple(dict.fromkeys((self.method, *self.compare)))

    @property
    def strategy(self):
        return STRATIFIED if self.stratified else PLAIN

    def validate(self):
        for method in self.methods:
            if method not in KINDS:
                raise InvalidOption(option='method', value=method, reason=f'expected one of {KINDS}')
        if self.averaging not in AVERAGING:
            raise InvalidOption(option='averaging', value=self.averaging, reason=f'expected one of {AVERAGING}')
        if EXTERNAL in self.methods and self.model is None and self.vectors is None:
            raise MissingOption(option='--vectors', reason='method is external')
        if self.dim < 1:
            raise InvalidOption(option='dim', value=self.dim, reason='must be >= 1')
        needs_data = self.command in NEEDS_DATA or (self.command == 'embed' and not self.words)
        if needs_data and self.data is None:
            raise MissingOption(option='--data', reason=f'running {self.command}')
        if self.command in NEEDS_MODEL and self.model is None:
            raise MissingOption(option='--model', reason=f'running {self.command}')
        if self.command == 'predict' and self.question is None and self.data is None:
            raise MissingOption(option='--question or --data', reason='running predict')
        for option, value in (
            ('--data', self.data), ('--stopwords', self.stopwords),
            ('--custom-stopwords', self.custom_stopwords), ('--rules', self.rules),
            ('--vectors', self.vectors), ('--model', self.model),
        ):
            if value is not None and not value.exists():
                raise InvalidOption(option=option, value=str(value), reason='path does not exist')

    def preprocess_config(self) -> PreprocessConfig:
        return PreprocessConfig(
            rules=tuple(load_rules(self.rules)) if self.rules else (),
            stopwords=load_stopwords(self.stopwords) if self.stopwords else frozenset(),
            custom_stopwords=load_stopwords(self.custom_stopwords) if self.custom_stopwords else frozenset(),
            drop_digit_tokens=not self.keep_digits,
            drop_foreign_script_tokens=self.script is not None,
            script=self.script,
            normalizer=self.normalizer,
        )

    def external_vectors(self):
        if EXTERNAL in self.methods:
            return load_external_vectors(self.vectors)
        return None


def cmd_eval(rc: RunConfig):
    corpus = load_corpus(rc.data, rc.format)
    results = compare_methods(
        corpus,
        rc.preprocess_config(),
        rc.methods,
        dim=rc.dim,
        hp=rc.hyperparams,
        k=rc.folds,
        seed=rc.seed,
        window=rc.window,
        fill=rc.fill,
        averaging=rc.averaging,
        strategy=rc.strategy,
        external=rc.external_vectors(),
        workers=rc.workers,
    )
    report = Report(Config({'output': {'console': True, 'dir': str(rc.out)}}))
    report.write(results, class_distribution(corpus))
    return EXIT_OK


def cmd_train(rc: RunConfig):
    corpus = load_corpus(rc.data, rc.format)
    pre = rc.preprocess_config()
    token_lists = preprocess_corpus(corpus.texts, pre)
    vocab = build_vocabulary(token_lists)
    model = fit_embedding(
        rc.method, token_lists, vocab, rc.dim, window=rc.window, fill=rc.fill,
        averaging=rc.averaging, seed=rc.seed, external=rc.external_vectors(),
    )
    X, _ = embed_questions(model, token_lists)
    classifier = train_ovr_logreg(X, corpus.targets, rc.hyperparams, classes=corpus.labels, workers=rc.workers)

    rc.out.mkdir(parents=True, exist_ok=True)
    save_preprocess_config(rc.out / PREPROCESS_FILE, pre)
    save_embedding(rc.out / EMBEDDING_FILE, model)
    save_classifier(rc.out / CLASSIFIER_FILE, classifier)
    logger.info('trained %s model (dim %i, %i classes) into %s', model.kind, model.dim, len(classifier.classes), rc.out)
    return EXIT_OK


def load_trained(model_dir: Path):
    pre = load_preprocess_config(model_dir / PREPROCESS_FILE)
    embedding = load_embedding(model_dir / EMBEDDING_FILE)
    classifier_path = model_dir / CLASSIFIER_FILE
    classifier = load_classifier(classifier_path) if classifier_path.exists() else None
    if classifier is not None and classifier.dim != embedding.dim:
        raise CorruptModel(
            path=str(classifier_path),
            reason=f'classifier expects dim {classifier.dim}, embedding has {embedding.dim}',
        )
    return pre, embedding, classifier


def _questions(rc: RunConfig):
    if rc.question is not None:
        return [rc.question]
    return load_corpus(rc.data, rc.format).texts


def cmd_predict(rc: RunConfig):
    pre, embedding, classifier = load_trained(rc.model)
    if classifier is None:
        raise CorruptModel(path=str(rc.model / CLASSIFIER_FILE), reason='file is missing')
    for text in _questions(rc):
        vector = embed_question(embedding, preprocess_question(text, pre))
        label, scores = predict(classifier, vector)
        print(f'{label}\t{scores[classifier.classes.index(label)]:.6f}')
    return EXIT_OK


def cmd_embed(rc: RunConfig):
    pre, embedding, _ = load_trained(rc.model)
    rc.out.mkdir(parents=True, exist_ok=True)
    if rc.words:
        if embedding.kind == TFIDF:
            raise InvalidOption(option='--words', value=True, reason='tf-idf models have no word vectors')
        path = rc.out / 'word_vectors.txt'
        export_vectors(path, embedding.vocabulary.words, embedding.word_vectors)
    else:
        corpus = load_corpus(rc.data, rc.format)
        X, _ = embed_questions(embedding, preprocess_corpus(corpus.texts, pre))
        path = rc.out / 'question_vectors.txt'
        export_vectors(path, [str(q.id) for q in corpus.questions], X)
    logger.info('vectors written to %s', path)
    return EXIT_OK


def cmd_project(rc: RunConfig):
    corpus = load_corpus(rc.data, rc.format)
    if rc.model is not None:
        pre, embedding, _ = load_trained(rc.model)
        token_lists = preprocess_corpus(corpus.texts, pre)
    else:
        token_lists = preprocess_corpus(corpus.texts, rc.preprocess_config())
        embedding = fit_embedding(
            rc.method, token_lists, build_vocabulary(token_lists), rc.dim, window=rc.window,
            fill=rc.fill, averaging=rc.averaging, seed=rc.seed, external=rc.external_vectors(),
        )
    X, _ = embed_questions(embedding, token_lists)
    coords = project_2d(list(X), seed=rc.seed)

    rc.out.mkdir(parents=True, exist_ok=True)
    path = rc.out / 'projection.tsv'
    with path.open('w', encoding='utf-8') as fp:
        for q, (x, y) in zip(corpus.questions, coords):
            fp.write(f'{q.id}\t{x:.10f}\t{y:.10f}\n')
    logger.info('projection written to %s', path)
    return EXIT_OK


HANDLERS = {
    'eval': cmd_eval,
    'train': cmd_train,
    'predict': cmd_predict,
    'embed': cmd_embed,
    'project': cmd_project,
}


def build_parser():
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument('--config', help='JSON file with configuration overrides')
    shared.add_argument('--data', help='labeled question file')
    shared.add_argument('--format', choices=('tsv', 'csv'))
    shared.add_argument('--method', help='entropy | tfidf | pmi-vsm | external')
    shared.add_argument('--compare', help='comma-separated extra methods for eval')
    shared.add_argument('--dim', type=int)
    shared.add_argument('--window', type=int)
    shared.add_argument('--fill', type=float, help='entropy value for absent words')
    shared.add_argument('--averaging', choices=AVERAGING)
    shared.add_argument('--multiset', action='store_true', default=None,
                        help='count repeated words when averaging')
    shared.add_argument('--vectors', help='external word vectors in text format')
    shared.add_argument('--folds', type=int)
    shared.add_argument('--seed', type=int)
    shared.add_argument('--stratified', action='store_true', default=None)
    shared.add_argument('--workers', type=int)
    shared.add_argument('--stopwords')
    shared.add_argument('--custom-stopwords', dest='custom_stopwords')
    shared.add_argument('--rules')
    shared.add_argument('--keep-digits', dest='keep_digits', action='store_true', default=None)
    shared.add_argument('--script', help='drop tokens with letters outside this script, e.g. cyrillic')
    shared.add_argument('--normalizer')
    shared.add_argument('--l2', type=float)
    shared.add_argument('--lr', type=float)
    shared.add_argument('--max-epochs', dest='max_epochs', type=int)
    shared.add_argument('--tol', type=float)
    shared.add_argument('--out')
    shared.add_argument('--model', help='directory written by train')
    shared.add_argument('--question')
    shared.add_argument('--words', action='store_true', help='embed: export word vectors')
    shared.add_argument('-v', '--verbose', action='store_true')
    shared.add_argument('-q', '--quiet', action='store_true')

    parser = argparse.ArgumentParser(prog='questionembeddings', description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest='command', required=True)
    for command in COMMANDS:
        sub.add_parser(command, parents=[shared])
    return parser


def resolve_config(args) -> Config:
    config = Config.from_file(args.config) if args.config else Config.defaults()
    for flag, path in FLAG_PATHS.items():
        value = getattr(args, flag, None)
        if value is not None:
            config.merge(_nested(path, value))
    if args.multiset:
        config.merge(_nested('embedding.averaging', MULTISET))
    if args.compare is not None:
        config.merge({'compare': [m for m in args.compare.split(',') if m]})
    return config


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code

    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format='%(asctime)s %(levelname)s %(name)s: %(message)s')

    try:
        rc = RunConfig.from_config(
            args.command, resolve_config(args),
            model=args.model, question=args.question, words=args.words,
        )
        return HANDLERS[args.command](rc)
    except Error as e:
        print(f'error: {e.message}', file=sys.stderr)
        if e.exit_code == EXIT_USAGE:
            parser.print_usage(sys.stderr)
        return e.exit_code
    except (np.linalg.LinAlgError, FloatingPointError) as e:
        print(f'error: numeric failure: {e}', file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == '__main__':
    sys.exit(main())
