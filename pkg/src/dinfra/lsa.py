"""Latent semantic analysis.

A weighted term-document matrix is factorized by truncated SVD; term vectors
are the rows of U_k * Sigma_k. The factorization uses a seeded randomized
range finder with power iterations, which is what makes Wikipedia-scale
matrices tractable; matrices small enough for an exact factorization are
handled by a direct dense decomposition instead (the sketch would span the
whole space anyway, so the randomized machinery buys nothing there).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .corpus import Vocabulary
from .errors import ConfigError, DataError
from .models import DenseVectorModel, normalize_rows

DEFAULT_DIMENSIONS = 300

WEIGHTING_SCHEMES = ("log-entropy", "tf-idf", "raw")

# Below this size an exact dense SVD is cheaper and accurate to machine
# precision; the randomized path is reserved for matrices that earn it.
DENSE_CUTOFF = 512


@dataclass(frozen=True)
class LsaConfig:
    k: int = DEFAULT_DIMENSIONS
    weighting: str = "log-entropy"
    svd_seed: int = 0
    power_iterations: int = 4
    oversampling: int = 10

    def __post_init__(self):
        if self.k < 1:
            raise ConfigError(f"k must be >= 1, got {self.k}")
        if self.weighting not in WEIGHTING_SCHEMES:
            raise ConfigError(
                f"unknown weighting scheme {self.weighting!r}; expected one of "
                f"{', '.join(WEIGHTING_SCHEMES)}"
            )
        if self.power_iterations < 0:
            raise ConfigError("power_iterations must be >= 0")
        if self.oversampling < 0:
            raise ConfigError("oversampling must be >= 0")


def weight_matrix(counts: sp.spmatrix, scheme: str) -> sp.csr_matrix:
    """Reweight a term-document count matrix.

    log-entropy: log(1 + tf) * (1 - H(t) / log n_docs), where H(t) is the
    entropy of the term's occurrence distribution over documents. Terms
    spread evenly over all documents get global weight 0; terms concentrated
    in a single document get global weight 1.

    tf-idf: log(1 + tf) * log(n_docs / df). raw: counts unchanged.

    Zero entries produced by the weighting are dropped from the result.
    """
    if scheme not in WEIGHTING_SCHEMES:
        raise ConfigError(
            f"unknown weighting scheme {scheme!r}; expected one of "
            f"{', '.join(WEIGHTING_SCHEMES)}"
        )
    matrix = counts.tocsr().astype(np.float64)
    if matrix.nnz == 0 or scheme == "raw":
        return matrix
    n_docs = matrix.shape[1]
    if scheme == "tf-idf":
        df = np.diff(matrix.indptr)
        idf = np.zeros(matrix.shape[0], dtype=np.float64)
        present = df > 0
        idf[present] = np.log(n_docs / df[present])
        weighted = matrix.copy()
        weighted.data = np.log1p(weighted.data)
        weighted = sp.diags(idf) @ weighted
    else:
        gf = np.asarray(matrix.sum(axis=1)).ravel()
        global_weight = np.ones(matrix.shape[0], dtype=np.float64)
        if n_docs >= 2:
            entropy = np.zeros(matrix.shape[0], dtype=np.float64)
            for row in range(matrix.shape[0]):
                tf = matrix.data[matrix.indptr[row] : matrix.indptr[row + 1]]
                if tf.size == 0:
                    continue
                p = tf / gf[row]
                entropy[row] = -np.dot(p, np.log(p))
            global_weight = 1.0 - entropy / np.log(n_docs)
        weighted = matrix.copy()
        weighted.data = np.log1p(weighted.data)
        weighted = sp.diags(global_weight) @ weighted
    weighted = weighted.tocsr()
    weighted.data[np.abs(weighted.data) < 1e-15] = 0.0
    weighted.eliminate_zeros()
    weighted.sort_indices()
    return weighted


def _apply_sign_convention(u: np.ndarray, vt: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Largest-magnitude entry of each left singular vector is made positive,
    # so repeated runs are comparable componentwise.
    for col in range(u.shape[1]):
        pivot = np.argmax(np.abs(u[:, col]))
        if u[pivot, col] < 0:
            u[:, col] = -u[:, col]
            vt[col, :] = -vt[col, :]
    return u, vt


def truncated_svd(
    matrix: sp.spmatrix | np.ndarray,
    k: int,
    *,
    oversampling: int = 10,
    power_iterations: int = 4,
    seed: int = 0,
    dense_cutoff: int = DENSE_CUTOFF,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Rank-k SVD: returns (U, sigma, Vt) with sigma descending.

    Deterministic given ``seed``. Raises for an all-zero matrix and for
    k > min(shape); k above the numerical rank is fine (trailing singular
    values come back as ~0).
    """
    is_sparse = sp.issparse(matrix)
    m, n = matrix.shape
    if k > min(m, n):
        raise ConfigError(f"k={k} exceeds min(shape)={min(m, n)}")
    nnz = matrix.nnz if is_sparse else np.count_nonzero(matrix)
    if nnz == 0:
        raise DataError("cannot factorize an all-zero matrix")

    sketch_size = min(k + oversampling, min(m, n))
    if min(m, n) <= dense_cutoff or sketch_size >= min(m, n):
        dense = matrix.toarray() if is_sparse else np.asarray(matrix, dtype=np.float64)
        u, s, vt = np.linalg.svd(dense, full_matrices=False)
    else:
        rng = np.random.default_rng(seed)
        omega = rng.standard_normal((n, sketch_size))
        q, _ = np.linalg.qr(matrix @ omega)
        for _ in range(power_iterations):
            z, _ = np.linalg.qr(matrix.T @ q)
            q, _ = np.linalg.qr(matrix @ z)
        projected = (matrix.T @ q).T if is_sparse else q.T @ matrix
        ub, s, vt = np.linalg.svd(projected, full_matrices=False)
        u = q @ ub
    u, vt = _apply_sign_convention(u[:, :k], vt[:k, :])
    return u, s[:k].copy(), vt


class LsaModel(DenseVectorModel):
    kind = "lsa"

    def __init__(self, config: LsaConfig, vocab: Vocabulary, vectors, raw_norms, singular_values):
        super().__init__(vocab, vectors, raw_norms)
        self.config = config
        self.singular_values = singular_values


def train_lsa(counts: sp.spmatrix, vocab: Vocabulary, config: LsaConfig) -> LsaModel:
    """Weight the term-document matrix and factorize it.

    Term vectors are rows of U_k * Sigma_k, L2-normalized for storage with
    raw norms retained. Terms whose weighted row is zero (e.g. killed by the
    entropy weight) end up untrained.
    """
    if len(vocab) == 0:
        raise ConfigError("empty vocabulary")
    if counts.shape[0] != len(vocab):
        raise ConfigError(
            f"term-document matrix has {counts.shape[0]} rows, vocabulary has {len(vocab)}"
        )
    if config.k > min(counts.shape):
        raise ConfigError(
            f"k={config.k} exceeds min(n_terms, n_docs)={min(counts.shape)}"
        )
    weighted = weight_matrix(counts, config.weighting)
    u, s, _ = truncated_svd(
        weighted,
        config.k,
        oversampling=config.oversampling,
        power_iterations=config.power_iterations,
        seed=config.svd_seed,
    )
    term_vectors = u * s[None, :]
    # Rows of zero-weight terms come out as numerical noise; zero them so the
    # untrained flag is exact.
    empty_rows = np.asarray(np.abs(weighted).sum(axis=1)).ravel() == 0.0
    term_vectors[empty_rows] = 0.0
    vectors, raw_norms = normalize_rows(term_vectors)
    return LsaModel(config, vocab, vectors, raw_norms, s.astype(np.float64))
