"""Similarity measures over model vectors and the [0,1] relatedness contract.

Three measures are supported: cosine, euclidean (a distance mapped to a
similarity) and correlation (mean-adjusted cosine, i.e. Pearson correlation
of vector components). All three accept either two dense numpy vectors or
two :class:`SparseVector` instances; mixing forms is a contract violation
because a trained model only ever produces one form.

Relatedness scores returned to callers are normalized into [0,1]:

* cosine and correlation are clamped at 0 (negative distributional
  similarity carries no relatedness signal, and clamping keeps 1 meaning
  "identical");
* euclidean similarity has native range (1/3, 1] and is affinely rescaled.

Evaluation against gold datasets always uses the raw values, never the
clamped ones.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import TermNotFoundError, UndefinedSimilarityError

if TYPE_CHECKING:  # pragma: no cover
    from .models import DsmModel


class Measure(enum.Enum):
    """The supported similarity measures, with their wire-format names."""

    COSINE = "cosine"
    EUCLIDEAN = "euclidean"
    CORRELATION = "correlation"

    @classmethod
    def parse(cls, name: str) -> "Measure":
        try:
            return cls(name.strip().lower())
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown measure {name!r}; expected one of {valid}") from None


@dataclass(frozen=True)
class SparseVector:
    """Sparse vector as parallel (index, value) arrays plus the full dimension.

    Indices are strictly increasing; values are non-zero. The dimension
    matters: correlation adjusts by the mean over all components, including
    the implicit zeros.
    """

    indices: np.ndarray
    values: np.ndarray
    dim: int

    def l2_norm(self) -> float:
        return float(np.sqrt(np.dot(self.values, self.values)))

    def normalized(self) -> "SparseVector":
        norm = self.l2_norm()
        if norm == 0.0:
            raise UndefinedSimilarityError("cannot normalize a zero vector")
        return SparseVector(self.indices, self.values / norm, self.dim)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros(self.dim, dtype=np.float64)
        dense[self.indices] = self.values
        return dense


@dataclass(frozen=True)
class RelatednessScore:
    """A measure's native value plus its monotone [0,1] normalization."""

    raw: float
    normalized: float


def _check_forms(u, v) -> bool:
    """Return True for the sparse path; reject mixed or unknown forms."""
    u_sparse = isinstance(u, SparseVector)
    v_sparse = isinstance(v, SparseVector)
    if u_sparse != v_sparse:
        raise TypeError("cannot compare a sparse vector with a dense vector")
    if not u_sparse:
        if np.asarray(u).ndim != 1 or np.asarray(v).ndim != 1:
            raise TypeError("dense inputs must be one-dimensional vectors")
        if len(u) != len(v):
            raise ValueError(f"vector length mismatch: {len(u)} vs {len(v)}")
    elif u.dim != v.dim:
        raise ValueError(f"sparse vector dimension mismatch: {u.dim} vs {v.dim}")
    return u_sparse


def _sparse_dot(u: SparseVector, v: SparseVector) -> float:
    # Merge on sorted index arrays.
    common, iu, iv = np.intersect1d(u.indices, v.indices, assume_unique=True, return_indices=True)
    if common.size == 0:
        return 0.0
    return float(np.dot(u.values[iu], v.values[iv]))


def cosine(u, v) -> float:
    """Cosine similarity, in [-1, 1]; undefined for zero vectors."""
    if _check_forms(u, v):
        norm_u, norm_v = u.l2_norm(), v.l2_norm()
        if norm_u == 0.0 or norm_v == 0.0:
            raise UndefinedSimilarityError("cosine is undefined for zero vectors")
        value = _sparse_dot(u, v) / (norm_u * norm_v)
    else:
        u = np.asarray(u, dtype=np.float64)
        v = np.asarray(v, dtype=np.float64)
        norm_u = float(np.linalg.norm(u))
        norm_v = float(np.linalg.norm(v))
        if norm_u == 0.0 or norm_v == 0.0:
            raise UndefinedSimilarityError("cosine is undefined for zero vectors")
        value = float(np.dot(u, v)) / (norm_u * norm_v)
    return max(-1.0, min(1.0, value))


def euclidean_similarity(u, v) -> float:
    """1 / (1 + euclidean distance) between the L2-normalized inputs.

    Because both inputs are normalized first, the distance is
    sqrt(2 - 2*cos) and the similarity lies in (1/3, 1].
    """
    distance = math.sqrt(max(0.0, 2.0 - 2.0 * cosine(u, v)))
    return 1.0 / (1.0 + distance)


def correlation_similarity(u, v) -> float:
    """Pearson correlation of vector components (mean-adjusted cosine).

    Undefined for constant vectors (zero component variance).
    """
    if _check_forms(u, v):
        return _sparse_correlation(u, v)
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    du = u - u.mean()
    dv = v - v.mean()
    norm_u = float(np.linalg.norm(du))
    norm_v = float(np.linalg.norm(dv))
    if norm_u == 0.0 or norm_v == 0.0:
        raise UndefinedSimilarityError("correlation is undefined for constant vectors")
    value = float(np.dot(du, dv)) / (norm_u * norm_v)
    return max(-1.0, min(1.0, value))


def _sparse_correlation(u: SparseVector, v: SparseVector) -> float:
    # sum((u - mean)(v - mean)) = dot(u, v) - n * mean_u * mean_v, so the
    # centered quantities never need materializing.
    n = u.dim
    mean_u = float(u.values.sum()) / n
    mean_v = float(v.values.sum()) / n
    cov = _sparse_dot(u, v) - n * mean_u * mean_v
    var_u = float(np.dot(u.values, u.values)) - n * mean_u * mean_u
    var_v = float(np.dot(v.values, v.values)) - n * mean_v * mean_v
    if var_u <= 0.0 or var_v <= 0.0:
        raise UndefinedSimilarityError("correlation is undefined for constant vectors")
    value = cov / math.sqrt(var_u * var_v)
    return max(-1.0, min(1.0, value))


_MEASURE_FUNCTIONS = {
    Measure.COSINE: cosine,
    Measure.EUCLIDEAN: euclidean_similarity,
    Measure.CORRELATION: correlation_similarity,
}


def measure_value(u, v, measure: Measure) -> float:
    """Apply ``measure`` to two vectors, returning the raw value."""
    return _MEASURE_FUNCTIONS[measure](u, v)


def normalize_score(raw: float, measure: Measure) -> float:
    """Map a raw measure value onto [0,1] with the measure's monotone map."""
    if measure is Measure.EUCLIDEAN:
        scaled = (raw - 1.0 / 3.0) * 1.5
    else:
        scaled = raw
    return max(0.0, min(1.0, scaled))


def relatedness(model: "DsmModel", term1: str, term2: str, measure: Measure) -> RelatednessScore:
    """Semantic relatedness of two terms under ``measure``.

    Raises :class:`TermNotFoundError` for out-of-vocabulary or untrained
    terms and propagates :class:`UndefinedSimilarityError` from the measure.
    """
    u = model.vector(term1)
    v = model.vector(term2)
    raw = measure_value(u, v, measure)
    return RelatednessScore(raw=raw, normalized=normalize_score(raw, measure))


def relatedness_to_targets(
    model: "DsmModel",
    main_term: str,
    targets: list[str],
    measure: Measure,
) -> list[dict]:
    """Score ``main_term`` against each target, one result entry per target.

    The main term must resolve (raises :class:`TermNotFoundError`); failures
    on individual targets become per-target ``{"target", "error"}`` entries
    instead of aborting the whole request.
    """
    main_vector = model.vector(main_term)
    results = []
    for target in targets:
        try:
            raw = measure_value(main_vector, model.vector(target), measure)
        except (TermNotFoundError, UndefinedSimilarityError) as exc:
            results.append({"target": target, "error": str(exc)})
        else:
            results.append(
                {"target": target, "score": normalize_score(raw, measure), "raw": raw}
            )
    return results
