"""Gold-dataset loading and Spearman rank-correlation evaluation.

Datasets are UTF-8 TSV files, ``word1<TAB>word2<TAB>score``, with an
optional header (recognized by a non-numeric score field on the first row)
and ``#`` comment lines. The three canonical datasets have fixed sizes that
are validated at load time: ws353 has 353 pairs, rg 65, mc 30. The expected
directory layout is ``<datasets_dir>/<name>/<lang>.tsv``.

Evaluation correlates raw (un-normalized) model scores with the human
ratings; the [0,1] clamping used for relatedness responses would tie all
negative-similarity pairs and silently distort rho.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    ConfigError,
    CoverageError,
    DatasetError,
    TermNotFoundError,
    UndefinedCorrelationError,
    UndefinedSimilarityError,
)
from .models import DsmModel
from .similarity import Measure, measure_value

DATASET_NAMES = ("ws353", "rg", "mc")

EXPECTED_PAIR_COUNTS = {"ws353": 353, "rg": 65, "mc": 30}

OOV_POLICIES = ("skip", "zero")


@dataclass
class WordPairDataset:
    name: str
    language: str
    pairs: list[tuple[str, str, float]]

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass
class EvalResult:
    """Spearman rho plus coverage accounting for one (model, dataset, measure) run.

    ``n_scored`` counts pairs whose both terms resolved against the model;
    ``n_skipped`` counts the rest. Under the ``zero`` policy unresolvable
    pairs still enter the correlation with score 0, but the coverage fields
    keep reporting how many pairs the model actually scored.
    """

    rho: float
    n_scored: int
    n_skipped: int
    policy: str
    dataset: str
    language: str
    measure: str
    model_kind: str
    per_pair: list[tuple[str, str, float]] = field(default_factory=list)


def load_word_pairs(
    path: str | Path,
    name: str,
    language: str,
    expected_pairs: int | None = None,
) -> WordPairDataset:
    """Parse a word-pair TSV file, optionally enforcing a pair count."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"dataset file not found: {path}")
    pairs: list[tuple[str, str, float]] = []
    saw_data = False
    for line_no, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split("\t")
        if len(fields) != 3:
            raise DatasetError(
                f"{path}:{line_no}: expected 3 tab-separated fields, got {len(fields)}"
            )
        try:
            score = float(fields[2])
        except ValueError:
            if not saw_data:
                # Header row: first score field is non-numeric.
                saw_data = True
                continue
            raise DatasetError(
                f"{path}:{line_no}: score field {fields[2]!r} is not a number"
            ) from None
        if not np.isfinite(score):
            raise DatasetError(f"{path}:{line_no}: score must be finite")
        saw_data = True
        pairs.append((fields[0], fields[1], score))
    if not pairs:
        raise DatasetError(f"{path}: no word pairs found")
    if expected_pairs is not None and len(pairs) != expected_pairs:
        raise DatasetError(
            f"{path}: integrity check failed, expected {expected_pairs} pairs "
            f"for {name}, found {len(pairs)}"
        )
    return WordPairDataset(name=name, language=language, pairs=pairs)


def load_dataset(name: str, language: str, datasets_dir: str | Path) -> WordPairDataset:
    """Load a canonical dataset from ``<datasets_dir>/<name>/<language>.tsv``."""
    name = name.lower()
    if name not in DATASET_NAMES:
        raise ConfigError(
            f"unknown dataset {name!r}; expected one of {', '.join(DATASET_NAMES)}"
        )
    path = Path(datasets_dir) / name / f"{language}.tsv"
    return load_word_pairs(
        path, name=name, language=language, expected_pairs=EXPECTED_PAIR_COUNTS[name]
    )


def average_ranks(values) -> np.ndarray:
    """1-based ranks; tied values share the mean of the ranks they span."""
    values = np.asarray(values, dtype=np.float64)
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values), dtype=np.float64)
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman(xs, ys) -> float:
    """Spearman's rank correlation: Pearson correlation of average ranks.

    Equals 1 - 6*sum(d^2) / (n*(n^2-1)) when no ties exist. Raises for
    length mismatch, n < 2, or a constant input list.
    """
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise ValueError("inputs must be 1-d sequences of equal length")
    if len(xs) < 2:
        raise UndefinedCorrelationError("need at least 2 observations")
    rx = average_ranks(xs)
    ry = average_ranks(ys)
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    norm = np.linalg.norm(dx) * np.linalg.norm(dy)
    if norm == 0.0:
        raise UndefinedCorrelationError("rank correlation undefined for constant input")
    return float(np.dot(dx, dy) / norm)


def evaluate(
    model: DsmModel,
    dataset: WordPairDataset,
    measure: Measure,
    oov_policy: str = "skip",
    keep_pairs: bool = False,
) -> EvalResult:
    """Correlate model scores with human ratings over a gold dataset.

    Pairs with an unresolvable term (out of vocabulary or untrained) or an
    undefined similarity are skipped under ``skip`` and scored 0 under
    ``zero``. Raises :class:`CoverageError` when fewer than 2 pairs are
    scorable.
    """
    if oov_policy not in OOV_POLICIES:
        raise ConfigError(f"unknown OOV policy {oov_policy!r}; expected skip or zero")
    if model.language != dataset.language:
        raise ConfigError(
            f"model language {model.language!r} does not match dataset "
            f"language {dataset.language!r}"
        )
    human: list[float] = []
    scores: list[float] = []
    per_pair: list[tuple[str, str, float]] = []
    n_scored = 0
    for word1, word2, gold in dataset.pairs:
        try:
            raw = measure_value(model.vector(word1), model.vector(word2), measure)
        except (TermNotFoundError, UndefinedSimilarityError):
            if oov_policy == "zero":
                human.append(gold)
                scores.append(0.0)
                if keep_pairs:
                    per_pair.append((word1, word2, 0.0))
            continue
        n_scored += 1
        human.append(gold)
        scores.append(raw)
        if keep_pairs:
            per_pair.append((word1, word2, raw))
    n_skipped = len(dataset) - n_scored
    if n_scored < 2:
        raise CoverageError(
            f"only {n_scored} of {len(dataset)} pairs scorable; "
            "need at least 2 to correlate"
        )
    return EvalResult(
        rho=spearman(human, scores),
        n_scored=n_scored,
        n_skipped=n_skipped,
        policy=oov_policy,
        dataset=dataset.name,
        language=dataset.language,
        measure=measure.value,
        model_kind=model.kind,
        per_pair=per_pair,
    )
