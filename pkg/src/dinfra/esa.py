"""Explicit semantic analysis.

Terms are represented as sparse TF-IDF weight vectors over the training
documents, which act as explicit concepts. Per-term vectors are kept sorted
by descending weight and trimmed by the standard sliding-window heuristic:
once the weight curve flattens out (the drop across a window falls below a
fraction of the top weight) the tail carries noise, not signal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .corpus import Vocabulary
from .errors import ConfigError, DataError, TermNotFoundError
from .models import DsmModel
from .similarity import SparseVector

DEFAULT_MAX_CONCEPTS = 10000
DEFAULT_PRUNE_WINDOW = 100
DEFAULT_PRUNE_THRESHOLD = 0.05


@dataclass(frozen=True)
class EsaConfig:
    max_concepts: int = DEFAULT_MAX_CONCEPTS
    prune_window: int = DEFAULT_PRUNE_WINDOW
    prune_threshold: float = DEFAULT_PRUNE_THRESHOLD

    def __post_init__(self):
        if self.max_concepts < 1:
            raise ConfigError(f"max_concepts must be >= 1, got {self.max_concepts}")
        if self.prune_window < 1:
            raise ConfigError(f"prune_window must be >= 1, got {self.prune_window}")
        if not 0.0 <= self.prune_threshold < 1.0:
            raise ConfigError(
                f"prune_threshold must be in [0, 1), got {self.prune_threshold}"
            )


def prune_concept_vector(
    weights: np.ndarray, config: EsaConfig
) -> int:
    """Return how many entries of a weight-descending vector to keep.

    Scanning the sorted weights, the vector is truncated at the first
    position i >= prune_window where the drop over the trailing window,
    weights[i - prune_window] - weights[i], falls below
    prune_threshold * weights[0]; the result is further capped at
    max_concepts.
    """
    keep = len(weights)
    if keep == 0:
        return 0
    cutoff = config.prune_threshold * weights[0]
    for i in range(config.prune_window, len(weights)):
        if weights[i - config.prune_window] - weights[i] < cutoff:
            keep = i
            break
    return min(keep, config.max_concepts)


class EsaModel(DsmModel):
    """Per-term sparse concept vectors, flattened CSR-style.

    ``concept_ids[offsets[t]:offsets[t+1]]`` and the parallel ``weights``
    slice hold term t's concepts in descending weight order. An empty slice
    means the term is untrained (zero idf or pruned away).
    """

    kind = "esa"

    def __init__(
        self,
        config: EsaConfig,
        vocab: Vocabulary,
        n_concepts: int,
        offsets: np.ndarray,
        concept_ids: np.ndarray,
        weights: np.ndarray,
    ):
        super().__init__(vocab)
        self.config = config
        self.n_concepts = n_concepts
        self.offsets = offsets
        self.concept_ids = concept_ids
        self.weights = weights

    def concept_vector(self, term_id: int) -> tuple[np.ndarray, np.ndarray]:
        start, stop = self.offsets[term_id], self.offsets[term_id + 1]
        return self.concept_ids[start:stop], self.weights[start:stop]

    def vector(self, term: str) -> SparseVector:
        """L2-normalized sparse concept vector, indices ascending."""
        term_id = self.resolve(term)
        if term_id is None:
            raise TermNotFoundError(term)
        ids, weights = self.concept_vector(term_id)
        if ids.size == 0:
            raise TermNotFoundError(term)
        order = np.argsort(ids)
        values = weights[order].astype(np.float64)
        return SparseVector(
            indices=ids[order].astype(np.int64),
            values=values / np.linalg.norm(values),
            dim=self.n_concepts,
        )


def train_esa(counts: sp.spmatrix, vocab: Vocabulary, config: EsaConfig) -> EsaModel:
    """Build TF-IDF concept vectors from a term-document count matrix.

    weight(t, d) = log(1 + tf(t, d)) * log(n_docs / df(t)). Terms occurring
    in every document get idf 0 and become untrained. Requires at least two
    documents, below which idf is degenerate.
    """
    if counts.shape[0] != len(vocab):
        raise ConfigError(
            f"term-document matrix has {counts.shape[0]} rows, vocabulary has {len(vocab)}"
        )
    n_terms, n_docs = counts.shape
    if n_docs < 2:
        raise DataError(f"ESA needs at least 2 documents, got {n_docs}")
    matrix = counts.tocsr().astype(np.float64)
    offsets = np.zeros(n_terms + 1, dtype=np.int64)
    all_ids: list[np.ndarray] = []
    all_weights: list[np.ndarray] = []
    for term_id in range(n_terms):
        start, stop = matrix.indptr[term_id], matrix.indptr[term_id + 1]
        tf = matrix.data[start:stop]
        docs = matrix.indices[start:stop]
        df = docs.size
        if df == 0 or df == n_docs:
            # df == n_docs gives idf 0: the term separates nothing.
            offsets[term_id + 1] = offsets[term_id]
            continue
        weights = np.log1p(tf) * np.log(n_docs / df)
        # Descending weight, document id as the deterministic tie-breaker.
        order = np.lexsort((docs, -weights))
        weights = weights[order]
        docs = docs[order]
        keep = prune_concept_vector(weights, config)
        offsets[term_id + 1] = offsets[term_id] + keep
        all_ids.append(docs[:keep].astype(np.int32))
        all_weights.append(weights[:keep].astype(np.float32))
    concept_ids = (
        np.concatenate(all_ids) if all_ids else np.empty(0, dtype=np.int32)
    )
    weights = (
        np.concatenate(all_weights) if all_weights else np.empty(0, dtype=np.float32)
    )
    return EsaModel(config, vocab, n_docs, offsets, concept_ids, weights)
