from .baselines import fit_pmi_vsm, fit_tfidf
from .classify import (
    Hyperparams,
    LogRegModel,
    predict,
    predict_batch,
    train_ovr_logreg,
)
from .corpus import (
    Corpus,
    FoldPlan,
    LabeledQuestion,
    class_distribution,
    load_corpus,
    split_folds,
)
from .embed import (
    QuestionVector,
    embed_question,
    embed_questions,
    fit_embedding,
    project_2d,
)
from .entropy import (
    SENTINEL,
    EntropyMatrix,
    build_entropy_matrix,
    entropy_value,
    fit_entropy_embedding,
)
from .errors import ConfigError, DataError, Error, NumericError
from .evaluate import (
    CVResult,
    EvalReport,
    classification_report,
    compare_methods,
    cross_validate,
    f1_score,
)
from .numerics import SvdFactors, frobenius_error, truncated_svd
from .preprocess import (
    PreprocessConfig,
    Vocabulary,
    build_vocabulary,
    preprocess_question,
    tokenize,
)
from .rules import SubstitutionRule, apply_substitution_rules
from .vectors import EmbeddingModel, export_vectors, load_external_vectors

__all__ = (
    "Corpus",
    "LabeledQuestion",
    "FoldPlan",
    "load_corpus",
    "class_distribution",
    "split_folds",

    "SubstitutionRule",
    "PreprocessConfig",
    "Vocabulary",
    "apply_substitution_rules",
    "tokenize",
    "preprocess_question",
    "build_vocabulary",

    "SvdFactors",
    "truncated_svd",
    "frobenius_error",

    "SENTINEL",
    "EntropyMatrix",
    "EmbeddingModel",
    "QuestionVector",
    "entropy_value",
    "build_entropy_matrix",
    "fit_entropy_embedding",
    "fit_tfidf",
    "fit_pmi_vsm",
    "fit_embedding",
    "load_external_vectors",
    "export_vectors",
    "embed_question",
    "embed_questions",
    "project_2d",

    "Hyperparams",
    "LogRegModel",
    "train_ovr_logreg",
    "predict",
    "predict_batch",

    "EvalReport",
    "CVResult",
    "f1_score",
    "classification_report",
    "cross_validate",
    "compare_methods",

    "Error",
    "ConfigError",
    "DataError",
    "NumericError",
)
