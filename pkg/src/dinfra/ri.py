"""Random indexing.

Every vocabulary term owns a fixed sparse ternary "index vector" derived by
hashing the term together with the model seed, so index vectors never need
persisting and any term's vector is recomputable on demand. Training
accumulates, for each target term, the index vectors of its co-occurrence
window neighbours weighted by the observed counts.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .corpus import CooccurrenceCounts, Vocabulary
from .errors import ConfigError
from .models import DenseVectorModel, normalize_rows

DEFAULT_VECTOR_LENGTH = 15000
DEFAULT_NNZ = 8
DEFAULT_WINDOW_SIZE = 5

_ACCUMULATION_BLOCK = 1024


@dataclass(frozen=True)
class RiConfig:
    """Random indexing hyperparameters.

    ``nnz`` non-zero entries per index vector, half +1 and half -1, spread
    over ``vector_length`` dimensions. ``window_size`` must match the window
    the co-occurrence counts were built with.
    """

    vector_length: int = DEFAULT_VECTOR_LENGTH
    nnz: int = DEFAULT_NNZ
    window_size: int = DEFAULT_WINDOW_SIZE
    seed: int = 0

    def __post_init__(self):
        if self.vector_length < 2:
            raise ConfigError(f"vector_length must be >= 2, got {self.vector_length}")
        if not 0 < self.nnz <= self.vector_length:
            raise ConfigError(f"nnz must be in 1..vector_length, got {self.nnz}")
        if self.nnz % 2 != 0:
            raise ConfigError(f"nnz must be even (half +1, half -1), got {self.nnz}")
        if self.window_size < 1:
            raise ConfigError(f"window_size must be >= 1, got {self.window_size}")


def index_vector(term: str, config: RiConfig) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic sparse ternary index vector for ``term``.

    A keyed hash of the term drives selection of ``nnz`` distinct positions;
    the first half (in selection order) get +1, the rest -1. Returns
    (positions, signs) sorted by position. The same (term, seed,
    vector_length, nnz) always yields the same vector, on any platform.
    """
    key = struct.pack("<q", config.seed)
    positions: list[int] = []
    seen: set[int] = set()
    block = 0
    while len(positions) < config.nnz:
        digest = hashlib.blake2b(
            term.encode("utf-8") + b"\x00" + struct.pack("<I", block),
            key=key,
            digest_size=32,
        ).digest()
        for (word,) in struct.iter_unpack("<Q", digest):
            position = word % config.vector_length
            if position not in seen:
                seen.add(position)
                positions.append(position)
                if len(positions) == config.nnz:
                    break
        block += 1
    signs = np.empty(config.nnz, dtype=np.int8)
    signs[: config.nnz // 2] = 1
    signs[config.nnz // 2 :] = -1
    order = np.argsort(np.array(positions))
    return np.array(positions, dtype=np.int64)[order], signs[order]


def index_vector_dense(term: str, config: RiConfig) -> np.ndarray:
    positions, signs = index_vector(term, config)
    dense = np.zeros(config.vector_length, dtype=np.float64)
    dense[positions] = signs
    return dense


def _index_matrix(vocab: Vocabulary, config: RiConfig) -> sp.csr_matrix:
    n = len(vocab)
    indptr = np.arange(0, (n + 1) * config.nnz, config.nnz, dtype=np.int64)
    indices = np.empty(n * config.nnz, dtype=np.int64)
    data = np.empty(n * config.nnz, dtype=np.float64)
    for term_id, term in enumerate(vocab.terms):
        positions, signs = index_vector(term, config)
        start = term_id * config.nnz
        indices[start : start + config.nnz] = positions
        data[start : start + config.nnz] = signs
    return sp.csr_matrix((data, indices, indptr), shape=(n, config.vector_length))


class RiModel(DenseVectorModel):
    kind = "ri"

    def __init__(self, config: RiConfig, vocab: Vocabulary, vectors, raw_norms):
        super().__init__(vocab, vectors, raw_norms)
        self.config = config


def train_ri(counts: CooccurrenceCounts, vocab: Vocabulary, config: RiConfig) -> RiModel:
    """Accumulate context vectors from co-occurrence counts.

    The raw context vector of term t is sum_c counts(t, c) * index_vector(c),
    an exact integer vector; stored vectors are its L2 normalization with the
    raw norm retained. Terms with no observed contexts get a zero norm and
    are flagged untrained.
    """
    n = len(vocab)
    if counts.matrix.shape != (n, n):
        raise ConfigError(
            f"co-occurrence counts built for {counts.matrix.shape[0]} terms, "
            f"vocabulary has {n}"
        )
    if counts.window_size != config.window_size:
        raise ConfigError(
            f"co-occurrence counts use window_size={counts.window_size}, "
            f"config expects {config.window_size}"
        )
    index_matrix = _index_matrix(vocab, config)
    count_matrix = counts.matrix.astype(np.float64).tocsr()
    vectors = np.empty((n, config.vector_length), dtype=np.float32)
    raw_norms = np.empty(n, dtype=np.float32)
    # Blockwise sparse product keeps peak memory bounded for large vocabularies.
    for start in range(0, n, _ACCUMULATION_BLOCK):
        stop = min(start + _ACCUMULATION_BLOCK, n)
        block = np.asarray((count_matrix[start:stop] @ index_matrix).todense())
        normalized, norms = normalize_rows(block)
        vectors[start:stop] = normalized
        raw_norms[start:stop] = norms
    return RiModel(config, vocab, vectors, raw_norms)
