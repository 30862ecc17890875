"""End-to-end training orchestration: corpus file in, trained model out.

Also parses the simple ``key = value`` config-file format accepted by the
CLI (``#`` comments, blank lines ignored). Recognized keys mirror the CLI
flags: language, min_count, window_size, stemming, dim, vector_length, nnz,
seed, weighting, max_concepts, prune_window, prune_threshold.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path

from .corpus import (
    CorpusSource,
    LanguageRules,
    Vocabulary,
    build_vocabulary,
    count_cooccurrences,
    count_term_document,
    iter_documents,
    load_stopwords,
)
from .errors import ConfigError
from .esa import EsaConfig, train_esa
from .lsa import LsaConfig, train_lsa
from .models import DsmModel
from .ri import RiConfig, train_ri

_CONFIG_KEYS = {
    "language",
    "min_count",
    "window_size",
    "stemming",
    "dim",
    "vector_length",
    "nnz",
    "seed",
    "weighting",
    "max_concepts",
    "prune_window",
    "prune_threshold",
}

_TRUE_STRINGS = ("1", "true", "yes", "on")


def parse_config_file(path: str | Path) -> dict[str, str]:
    """Parse ``key = value`` lines; unknown keys are rejected."""
    values: dict[str, str] = {}
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    for line_no, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{line_no}: expected 'key = value'")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{line_no}: unknown config key {key!r}")
        values[key] = value.strip()
    return values


def parse_bool(value: str) -> bool:
    return value.strip().lower() in _TRUE_STRINGS


def corpus_id_for(source: CorpusSource) -> str:
    """Short provenance string: path stem, document count, content hash."""
    digest = hashlib.sha256()
    n_docs = 0
    for doc in iter_documents(source):
        digest.update(doc.encode("utf-8"))
        digest.update(b"\n")
        n_docs += 1
    return f"{Path(source.path).stem}:{n_docs}docs:{digest.hexdigest()[:12]}"


@dataclass
class TrainingOptions:
    min_count: int = 5
    window_size: int = 5
    stemming: bool = False
    stopwords_path: str | Path | None = None
    # random indexing
    vector_length: int = 15000
    nnz: int = 8
    seed: int = 0
    # LSA
    dim: int = 300
    weighting: str = "log-entropy"
    # ESA
    max_concepts: int = 10000
    prune_window: int = 100
    prune_threshold: float = 0.05


def build_model(kind: str, source: CorpusSource, options: TrainingOptions) -> DsmModel:
    """Train one model of the requested kind from a raw corpus."""
    rules = LanguageRules(language=source.language, stemming=options.stemming)
    stopwords = load_stopwords(source.language, options.stopwords_path)
    vocab = build_vocabulary(
        source, min_count=options.min_count, stopwords=stopwords, rules=rules
    )
    return train_on_vocabulary(kind, source, vocab, options)


def train_on_vocabulary(
    kind: str,
    source: CorpusSource,
    vocab: Vocabulary,
    options: TrainingOptions,
) -> DsmModel:
    if kind == "ri":
        config = RiConfig(
            vector_length=options.vector_length,
            nnz=options.nnz,
            window_size=options.window_size,
            seed=options.seed,
        )
        counts = count_cooccurrences(source, vocab, options.window_size)
        return train_ri(counts, vocab, config)
    if kind == "lsa":
        config = LsaConfig(k=options.dim, weighting=options.weighting, svd_seed=options.seed)
        return train_lsa(count_term_document(source, vocab), vocab, config)
    if kind == "esa":
        config = EsaConfig(
            max_concepts=options.max_concepts,
            prune_window=options.prune_window,
            prune_threshold=options.prune_threshold,
        )
        return train_esa(count_term_document(source, vocab), vocab, config)
    raise ConfigError(f"unknown model kind {kind!r}; expected ri, lsa or esa")
