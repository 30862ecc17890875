"""dinfra: multilingual distributional semantics infrastructure.

Trains and persists three distributional semantic models per language
(random indexing, latent semantic analysis, explicit semantic analysis),
computes word-to-word semantic relatedness under three similarity measures,
evaluates models against word-similarity gold datasets with Spearman's rank
correlation, and exposes everything through a JSON webservice and a CLI.
"""

from .corpus import (
    SUPPORTED_LANGUAGES,
    CooccurrenceCounts,
    CorpusSource,
    LanguageRules,
    Vocabulary,
    build_vocabulary,
    count_cooccurrences,
    count_term_document,
    load_stopwords,
    normalize_term,
    tokenize,
)
from .errors import (
    ConfigError,
    CorpusError,
    CoverageError,
    DataError,
    DatasetError,
    DinfraError,
    RegistryError,
    TermNotFoundError,
    UndefinedCorrelationError,
    UndefinedSimilarityError,
)
from .esa import EsaConfig, EsaModel, train_esa
from .evaluation import (
    DATASET_NAMES,
    EXPECTED_PAIR_COUNTS,
    EvalResult,
    WordPairDataset,
    evaluate,
    load_dataset,
    load_word_pairs,
    spearman,
)
from .lsa import LsaConfig, LsaModel, train_lsa, truncated_svd, weight_matrix
from .models import MODEL_KINDS, DsmModel
from .pipeline import TrainingOptions, build_model
from .registry import (
    ModelCache,
    ModelDescriptor,
    check_registry,
    find_descriptor,
    list_models,
    load_model,
    save_model,
)
from .ri import RiConfig, RiModel, index_vector, train_ri
from .similarity import (
    Measure,
    RelatednessScore,
    SparseVector,
    correlation_similarity,
    cosine,
    euclidean_similarity,
    relatedness,
    relatedness_to_targets,
)

__version__ = "0.1.0"
