"""Shared surface of the trained distributional models.

A trained model maps terms to vectors. Dense-vector models (random indexing,
LSA) store an L2-normalized float32 matrix plus the pre-normalization norms;
the ESA model stores sparse concept vectors. Models are immutable after
training and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import asdict

import numpy as np

from .corpus import Vocabulary, normalize_term
from .errors import TermNotFoundError

MODEL_KINDS = ("ri", "lsa", "esa")


class DsmModel:
    """Base class: term resolution and vector lookup."""

    kind: str = ""

    def __init__(self, vocab: Vocabulary):
        self.vocab = vocab

    @property
    def language(self) -> str:
        return self.vocab.language

    def resolve(self, term: str) -> int | None:
        """Map a raw query term to a vocabulary id, or None if absent.

        Applies the same NFC normalization and case folding as the corpus
        tokenizer, so "Mother" resolves to the trained entry for "mother".
        """
        return self.vocab.id_for(normalize_term(term, self.vocab.rules))

    def vector(self, term: str):
        raise NotImplementedError

    def has_vector(self, term: str) -> bool:
        try:
            self.vector(term)
        except TermNotFoundError:
            return False
        return True

    def config_dict(self) -> dict:
        return asdict(self.config)  # type: ignore[attr-defined]


class DenseVectorModel(DsmModel):
    """Model whose vectors form a dense (n_terms, dim) float32 matrix.

    ``raw_norms[i] == 0`` flags term i as untrained (it never observed a
    context); untrained terms are excluded from similarity exactly like
    out-of-vocabulary ones.
    """

    def __init__(self, vocab: Vocabulary, vectors: np.ndarray, raw_norms: np.ndarray):
        super().__init__(vocab)
        self.vectors = vectors
        self.raw_norms = raw_norms

    def vector(self, term: str) -> np.ndarray:
        term_id = self.resolve(term)
        if term_id is None or self.raw_norms[term_id] == 0.0:
            raise TermNotFoundError(term)
        return self.vectors[term_id]

    def denormalized_vector(self, term: str) -> np.ndarray:
        """Reconstruct the pre-normalization vector from the stored norm."""
        return self.vector(term).astype(np.float64) * float(self.raw_norms[self.resolve(term)])


def normalize_rows(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """L2-normalize rows; zero rows stay zero. Returns (float32 rows, float32 norms)."""
    norms = np.linalg.norm(matrix, axis=1)
    safe = np.where(norms == 0.0, 1.0, norms)
    normalized = (matrix / safe[:, None]).astype(np.float32)
    return normalized, norms.astype(np.float32)
