"""Streaming corpus ingestion.

Turns raw text corpora into token streams, vocabularies, windowed
co-occurrence counts and term-document count matrices. These structures are
the shared input of all three distributional models, so everything here is
deterministic: identical corpus bytes and configuration produce identical
outputs, across runs and platforms.

Corpus files are UTF-8 text, one document per line, blank lines skipped
(``fmt="lines"``). A directory of one-document-per-file text files is also
accepted (``fmt="files"``; files are processed in sorted name order).
"""

from __future__ import annotations

import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import ConfigError, CorpusError

SUPPORTED_LANGUAGES = ("en", "pt", "de", "es", "fr", "sv", "it", "nl", "zh", "ru", "ar", "fa")

DEFAULT_MIN_COUNT = 5

_STOPWORD_DIR = Path(__file__).parent / "data" / "stopwords"

# Unicode letters and digits; excludes underscore on purpose.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

# Experimental English-only suffix stripper, applied only when
# ``LanguageRules.stemming`` is on. Ordered; first match wins.
_EN_SUFFIX_RULES = (
    ("sses", "ss"),
    ("ies", "y"),
    ("ss", "ss"),
    ("s", ""),
    ("ing", ""),
    ("ed", ""),
)


@dataclass(frozen=True)
class LanguageRules:
    """Tokenization rules for one language.

    ``stemming`` enables a small experimental suffix-stripping pass; it is
    implemented for English only and is a no-op elsewhere.
    """

    language: str
    stemming: bool = False

    def __post_init__(self):
        if self.language not in SUPPORTED_LANGUAGES:
            raise ConfigError(
                f"unsupported language {self.language!r}; expected one of "
                f"{', '.join(SUPPORTED_LANGUAGES)}"
            )


@dataclass(frozen=True)
class CorpusSource:
    """Locator for a raw corpus.

    ``fmt`` is ``"lines"`` (one document per line of a single file) or
    ``"files"`` (one document per file inside a directory).
    """

    path: str | Path
    language: str
    fmt: str = "lines"
    encoding: str = "utf-8"

    def __post_init__(self):
        if self.language not in SUPPORTED_LANGUAGES:
            raise ConfigError(
                f"unsupported language {self.language!r}; expected one of "
                f"{', '.join(SUPPORTED_LANGUAGES)}"
            )
        if self.fmt not in ("lines", "files"):
            raise ConfigError(f"unsupported corpus format {self.fmt!r}")
        if self.encoding.lower().replace("-", "") != "utf8":
            raise ConfigError("corpus files must be UTF-8 encoded")


def _stem_en(token: str) -> str:
    if len(token) < 4:
        return token
    for suffix, replacement in _EN_SUFFIX_RULES:
        if token.endswith(suffix):
            stem = token[: len(token) - len(suffix)] + replacement
            if len(stem) >= 3:
                return stem
            return token
    return token


def tokenize(text: str, rules: LanguageRules) -> list[str]:
    """Split ``text`` into normalized tokens.

    Text is NFC-normalized, then lowercased and split on any run of
    non-letter/non-digit characters. Chinese input is expected to be
    pre-segmented, so for ``zh`` the text is split on whitespace and passed
    through otherwise untouched (lowercasing only affects embedded Latin).
    Token order is preserved.
    """
    text = unicodedata.normalize("NFC", text)
    if rules.language == "zh":
        return [tok.lower() for tok in text.split()]
    tokens = [match.group(0).lower() for match in _TOKEN_RE.finditer(text)]
    if rules.stemming and rules.language == "en":
        tokens = [_stem_en(tok) for tok in tokens]
    return tokens


def normalize_term(term: str, rules: LanguageRules) -> str:
    """Normalize a query term exactly the way the tokenizer would.

    Guarantees that e.g. ``"Mother"`` resolves to the same vocabulary entry
    as the corpus token ``mother``. Multi-token input is joined with spaces
    and will simply not resolve against a single-token vocabulary.
    """
    tokens = tokenize(term, rules)
    return " ".join(tokens)


def iter_documents(source: CorpusSource) -> Iterator[str]:
    """Yield decoded documents from ``source``, skipping blank ones.

    Raises :class:`CorpusError` for unreadable paths and for invalid UTF-8,
    naming the absolute byte offset of the offending byte.
    """
    path = Path(source.path)
    if source.fmt == "lines":
        yield from _iter_line_documents(path)
    else:
        yield from _iter_file_documents(path)


def _decode(raw: bytes, origin: str, base_offset: int) -> str:
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusError(
            f"invalid UTF-8 in {origin} at byte offset {base_offset + exc.start}"
        ) from exc


def _iter_line_documents(path: Path) -> Iterator[str]:
    if not path.is_file():
        raise CorpusError(f"corpus file not found: {path}")
    offset = 0
    with open(path, "rb") as handle:
        for raw in handle:
            line = _decode(raw, str(path), offset).strip()
            offset += len(raw)
            if line:
                yield line


def _iter_file_documents(path: Path) -> Iterator[str]:
    if not path.is_dir():
        raise CorpusError(f"corpus directory not found: {path}")
    files = sorted(p for p in path.iterdir() if p.is_file())
    for file_path in files:
        text = _decode(file_path.read_bytes(), str(file_path), 0).strip()
        if text:
            yield text


def iter_token_streams(source: CorpusSource, rules: LanguageRules | None = None) -> Iterator[list[str]]:
    """Yield one token list per document."""
    rules = rules or LanguageRules(source.language)
    for doc in iter_documents(source):
        yield tokenize(doc, rules)


def load_stopwords(language: str, path: str | Path | None = None) -> frozenset[str]:
    """Load a stopword list, one term per line, ``#`` comments allowed.

    Without an explicit ``path`` the list bundled for ``language`` is used.
    An empty or missing file means no filtering. Entries are NFC-normalized
    and lowercased so they match tokenizer output whatever the file's casing.
    """
    if path is None:
        path = _STOPWORD_DIR / f"{language}.txt"
    path = Path(path)
    if not path.is_file():
        return frozenset()
    terms = set()
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            terms.add(unicodedata.normalize("NFC", line).lower())
    return frozenset(terms)


@dataclass
class Vocabulary:
    """Dense term/id bijection with corpus and document frequencies.

    Ids run 0..size-1 in descending corpus frequency order, ties broken
    lexicographically, which makes vocabulary construction deterministic.
    """

    language: str
    terms: list[str]
    frequencies: np.ndarray
    doc_frequencies: np.ndarray
    rules: LanguageRules = field(default=None)  # type: ignore[assignment]
    term_ids: dict[str, int] = field(default=None, repr=False)  # type: ignore[assignment]

    def __post_init__(self):
        if self.rules is None:
            self.rules = LanguageRules(self.language)
        if self.term_ids is None:
            self.term_ids = {term: idx for idx, term in enumerate(self.terms)}

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.term_ids

    def id_for(self, term: str) -> int | None:
        return self.term_ids.get(term)

    def term_for(self, term_id: int) -> str:
        return self.terms[term_id]


def build_vocabulary(
    source: CorpusSource,
    min_count: int = DEFAULT_MIN_COUNT,
    stopwords: Iterable[str] = (),
    rules: LanguageRules | None = None,
) -> Vocabulary:
    """Count terms in ``source`` and retain those occurring at least
    ``min_count`` times that are not stopwords.

    Raises :class:`CorpusError` for an empty corpus or an empty resulting
    vocabulary, and :class:`ConfigError` for ``min_count < 1``.
    """
    if min_count < 1:
        raise ConfigError(f"min_count must be >= 1, got {min_count}")
    rules = rules or LanguageRules(source.language)
    stopset = frozenset(stopwords)
    freq: Counter[str] = Counter()
    doc_freq: Counter[str] = Counter()
    n_docs = 0
    for tokens in iter_token_streams(source, rules):
        n_docs += 1
        freq.update(tokens)
        doc_freq.update(set(tokens))
    if n_docs == 0:
        raise CorpusError(f"empty corpus: {source.path}")
    retained = sorted(
        (term for term, count in freq.items() if count >= min_count and term not in stopset),
        key=lambda term: (-freq[term], term),
    )
    if not retained:
        raise CorpusError(
            f"no terms retained from {source.path} with min_count={min_count}"
        )
    return Vocabulary(
        language=source.language,
        terms=retained,
        frequencies=np.array([freq[t] for t in retained], dtype=np.int64),
        doc_frequencies=np.array([doc_freq[t] for t in retained], dtype=np.int64),
        rules=rules,
    )


@dataclass
class CooccurrenceCounts:
    """Symmetric-window co-occurrence counts over a vocabulary.

    ``matrix[t, c]`` is the number of times context term ``c`` appeared
    within ``window_size`` token positions of target term ``t``. Windows
    never cross document boundaries; out-of-vocabulary tokens occupy
    positions but contribute no counts.
    """

    window_size: int
    matrix: sp.csr_matrix

    @property
    def total(self) -> int:
        return int(self.matrix.sum())


def count_cooccurrences(
    source: CorpusSource,
    vocab: Vocabulary,
    window_size: int,
) -> CooccurrenceCounts:
    """Accumulate windowed co-occurrence counts for every in-vocabulary term."""
    if window_size < 1:
        raise ConfigError(f"window_size must be >= 1, got {window_size}")
    if vocab.language != source.language:
        raise ConfigError(
            f"vocabulary language {vocab.language!r} does not match corpus "
            f"language {source.language!r}"
        )
    counts: Counter[tuple[int, int]] = Counter()
    for tokens in iter_token_streams(source, vocab.rules):
        ids = [vocab.term_ids.get(tok, -1) for tok in tokens]
        n = len(ids)
        for i, target in enumerate(ids):
            if target < 0:
                continue
            for j in range(max(0, i - window_size), min(n, i + window_size + 1)):
                if j == i:
                    continue
                context = ids[j]
                if context >= 0:
                    counts[(target, context)] += 1
    return CooccurrenceCounts(window_size, _counter_to_csr(counts, (len(vocab), len(vocab))))


def count_term_document(source: CorpusSource, vocab: Vocabulary) -> sp.csr_matrix:
    """Build the term-document count matrix, one column per document.

    Columns follow document ingestion order; documents without in-vocabulary
    tokens are kept as empty columns so document ids remain stable.
    """
    if len(vocab) == 0:
        raise CorpusError("empty vocabulary")
    if vocab.language != source.language:
        raise ConfigError(
            f"vocabulary language {vocab.language!r} does not match corpus "
            f"language {source.language!r}"
        )
    counts: Counter[tuple[int, int]] = Counter()
    n_docs = 0
    for doc_id, tokens in enumerate(iter_token_streams(source, vocab.rules)):
        n_docs = doc_id + 1
        for tok in tokens:
            term_id = vocab.term_ids.get(tok)
            if term_id is not None:
                counts[(term_id, doc_id)] += 1
    if n_docs == 0:
        raise CorpusError(f"empty corpus: {source.path}")
    return _counter_to_csr(counts, (len(vocab), n_docs))


def _counter_to_csr(counts: Counter, shape: tuple[int, int]) -> sp.csr_matrix:
    # Sorted coordinates keep the structure byte-reproducible.
    if not counts:
        return sp.csr_matrix(shape, dtype=np.int64)
    coords = sorted(counts)
    rows = np.array([r for r, _ in coords], dtype=np.int64)
    cols = np.array([c for _, c in coords], dtype=np.int64)
    data = np.array([counts[c] for c in coords], dtype=np.int64)
    matrix = sp.csr_matrix((data, (rows, cols)), shape=shape)
    matrix.sort_indices()
    return matrix


def documents_from_strings(docs: Sequence[str], language: str, directory: str | Path) -> CorpusSource:
    """Write ``docs`` to a one-document-per-line file and return its source.

    Convenience for tests and fixtures; blank documents are preserved as
    written but skipped on ingestion like any other blank line.
    """
    path = Path(directory) / f"corpus-{language}.txt"
    path.write_text("\n".join(docs) + "\n", encoding="utf-8")
    return CorpusSource(path=path, language=language)
