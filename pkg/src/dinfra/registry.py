"""Model persistence: save, enumerate and lazily load trained models.

Each model lives in a single container file: magic bytes, a format version,
a JSON metadata block, the vocabulary, the vector data (little-endian 32-bit
floats; dense row-major for RI/LSA, coordinate triples for ESA) and a
trailing 64-bit checksum over everything before it. A ``manifest.tsv`` at
the registry root indexes the files by (language, kind, config fingerprint);
manifest updates are atomic via write-temp-then-rename.

``DINFRA_MODEL_DIR`` names the default registry root.
"""

from __future__ import annotations

import hashlib
import io
import json
import os
import struct
import threading
from collections import OrderedDict
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .corpus import LanguageRules, Vocabulary
from .errors import RegistryError
from .esa import EsaConfig, EsaModel
from .lsa import LsaConfig, LsaModel
from .models import DsmModel
from .ri import RiConfig, RiModel

MODEL_DIR_ENV = "DINFRA_MODEL_DIR"

MANIFEST_NAME = "manifest.tsv"

_MAGIC = b"DNFR"
_FORMAT_VERSION = 1
_KIND_BYTES = {"ri": 1, "lsa": 2, "esa": 3}
_KIND_NAMES = {v: k for k, v in _KIND_BYTES.items()}

DEFAULT_CACHE_CAPACITY = 6


def default_model_dir() -> Path:
    return Path(os.environ.get(MODEL_DIR_ENV, "models"))


@dataclass(frozen=True)
class ModelDescriptor:
    language: str
    kind: str
    fingerprint: str
    corpus_id: str
    created_at: str
    file_path: str  # relative to the registry root

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.language, self.kind, self.fingerprint)

    def to_dict(self) -> dict:
        return {
            "language": self.language,
            "kind": self.kind,
            "fingerprint": self.fingerprint,
            "corpus_id": self.corpus_id,
            "created_at": self.created_at,
            "file_path": self.file_path,
        }


def config_fingerprint(kind: str, config_dict: dict) -> str:
    payload = json.dumps({"kind": kind, "config": config_dict}, sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def _checksum(data: bytes) -> bytes:
    return hashlib.blake2b(data, digest_size=8).digest()


def _write_string(buf: io.BytesIO, text: str):
    raw = text.encode("utf-8")
    if len(raw) > 0xFFFF:
        raise RegistryError(f"term too long to serialize: {text[:40]!r}...")
    buf.write(struct.pack("<H", len(raw)))
    buf.write(raw)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def read(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise RegistryError("model file truncated")
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.read(struct.calcsize(fmt)))

    def read_string(self) -> str:
        (length,) = self.unpack("<H")
        return self.read(length).decode("utf-8")

    def read_array(self, dtype: str, count: int) -> np.ndarray:
        dt = np.dtype(dtype)
        return np.frombuffer(self.read(dt.itemsize * count), dtype=dt).copy()


def _serialize_vocab(buf: io.BytesIO, vocab: Vocabulary):
    buf.write(struct.pack("<I", len(vocab)))
    for term in vocab.terms:
        _write_string(buf, term)
    buf.write(vocab.frequencies.astype("<u8").tobytes())
    buf.write(vocab.doc_frequencies.astype("<u8").tobytes())


def _deserialize_vocab(reader: _Reader, language: str, stemming: bool) -> Vocabulary:
    (n_terms,) = reader.unpack("<I")
    terms = [reader.read_string() for _ in range(n_terms)]
    frequencies = reader.read_array("<u8", n_terms).astype(np.int64)
    doc_frequencies = reader.read_array("<u8", n_terms).astype(np.int64)
    return Vocabulary(
        language=language,
        terms=terms,
        frequencies=frequencies,
        doc_frequencies=doc_frequencies,
        rules=LanguageRules(language=language, stemming=stemming),
    )


def _serialize_model(model: DsmModel, descriptor: ModelDescriptor) -> bytes:
    buf = io.BytesIO()
    buf.write(_MAGIC)
    buf.write(struct.pack("<BB", _FORMAT_VERSION, _KIND_BYTES[model.kind]))
    meta = {
        "descriptor": descriptor.to_dict(),
        "config": model.config_dict(),
        "language": model.language,
        "stemming": model.vocab.rules.stemming,
    }
    meta_bytes = json.dumps(meta, sort_keys=True).encode("utf-8")
    buf.write(struct.pack("<I", len(meta_bytes)))
    buf.write(meta_bytes)
    _serialize_vocab(buf, model.vocab)
    if model.kind in ("ri", "lsa"):
        vectors = model.vectors
        buf.write(struct.pack("<II", vectors.shape[0], vectors.shape[1]))
        buf.write(vectors.astype("<f4").tobytes())
        buf.write(model.raw_norms.astype("<f4").tobytes())
        if model.kind == "lsa":
            buf.write(struct.pack("<I", len(model.singular_values)))
            buf.write(model.singular_values.astype("<f8").tobytes())
    else:
        n_triples = len(model.concept_ids)
        buf.write(struct.pack("<IQ", model.n_concepts, n_triples))
        term_ids = np.repeat(
            np.arange(len(model.vocab), dtype=np.uint32), np.diff(model.offsets)
        )
        buf.write(term_ids.astype("<u4").tobytes())
        buf.write(model.concept_ids.astype("<u4").tobytes())
        buf.write(model.weights.astype("<f4").tobytes())
    payload = buf.getvalue()
    return payload + _checksum(payload)


def _deserialize_model(data: bytes, source: str) -> DsmModel:
    if len(data) < len(_MAGIC) + 10:
        raise RegistryError(f"{source}: not a model file (too short)")
    if data[: len(_MAGIC)] != _MAGIC:
        raise RegistryError(f"{source}: bad magic bytes")
    if _checksum(data[:-8]) != data[-8:]:
        raise RegistryError(f"{source}: checksum mismatch, file corrupted")
    reader = _Reader(data[:-8])
    reader.read(len(_MAGIC))
    version, kind_byte = reader.unpack("<BB")
    if version != _FORMAT_VERSION:
        raise RegistryError(f"{source}: unsupported format version {version}")
    kind = _KIND_NAMES.get(kind_byte)
    if kind is None:
        raise RegistryError(f"{source}: unknown model kind byte {kind_byte}")
    (meta_len,) = reader.unpack("<I")
    meta = json.loads(reader.read(meta_len).decode("utf-8"))
    vocab = _deserialize_vocab(reader, meta["language"], meta.get("stemming", False))
    config = meta["config"]
    if kind in ("ri", "lsa"):
        rows, cols = reader.unpack("<II")
        vectors = reader.read_array("<f4", rows * cols).reshape(rows, cols)
        raw_norms = reader.read_array("<f4", rows)
        if kind == "ri":
            return RiModel(RiConfig(**config), vocab, vectors, raw_norms)
        (k,) = reader.unpack("<I")
        singular_values = reader.read_array("<f8", k)
        return LsaModel(LsaConfig(**config), vocab, vectors, raw_norms, singular_values)
    n_concepts, n_triples = reader.unpack("<IQ")
    term_ids = reader.read_array("<u4", n_triples).astype(np.int64)
    concept_ids = reader.read_array("<u4", n_triples).astype(np.int32)
    weights = reader.read_array("<f4", n_triples)
    offsets = np.searchsorted(term_ids, np.arange(len(vocab) + 1, dtype=np.int64))
    return EsaModel(EsaConfig(**config), vocab, n_concepts, offsets, concept_ids, weights)


def _manifest_path(root: str | Path) -> Path:
    return Path(root) / MANIFEST_NAME


def _read_manifest(root: str | Path) -> list[ModelDescriptor]:
    path = _manifest_path(root)
    if not path.is_file():
        return []
    entries = []
    for line_no, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 6:
            raise RegistryError(f"{path}:{line_no}: malformed manifest row")
        entries.append(ModelDescriptor(*fields))
    return entries


def _write_manifest(root: str | Path, entries: list[ModelDescriptor]):
    path = _manifest_path(root)
    tmp = path.with_suffix(".tmp")
    lines = ["#language\tkind\tfingerprint\tcorpus_id\tcreated_at\tfile_path"]
    for entry in entries:
        lines.append(
            "\t".join(
                (
                    entry.language,
                    entry.kind,
                    entry.fingerprint,
                    entry.corpus_id,
                    entry.created_at,
                    entry.file_path,
                )
            )
        )
    tmp.write_text("\n".join(lines) + "\n", encoding="utf-8")
    os.replace(tmp, path)


def save_model(
    model: DsmModel,
    root_dir: str | Path,
    corpus_id: str = "",
    overwrite: bool = False,
) -> ModelDescriptor:
    """Serialize ``model`` under ``root_dir`` and record it in the manifest.

    The registry key is (language, kind, config fingerprint); saving a
    duplicate key raises unless ``overwrite`` is set. Both the model file
    and the manifest are written atomically.
    """
    root = Path(root_dir)
    root.mkdir(parents=True, exist_ok=True)
    fingerprint = config_fingerprint(model.kind, model.config_dict())
    descriptor = ModelDescriptor(
        language=model.language,
        kind=model.kind,
        fingerprint=fingerprint,
        corpus_id=corpus_id,
        created_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        file_path=f"{model.language}-{model.kind}-{fingerprint}.dsm",
    )
    entries = _read_manifest(root)
    existing = [e for e in entries if e.key == descriptor.key]
    if existing and not overwrite:
        raise RegistryError(
            f"model already registered for key {descriptor.key}; pass overwrite=True to replace"
        )
    data = _serialize_model(model, descriptor)
    target = root / descriptor.file_path
    tmp = target.with_suffix(".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, target)
    entries = [e for e in entries if e.key != descriptor.key]
    entries.append(descriptor)
    _write_manifest(root, entries)
    return descriptor


def load_model(root_dir: str | Path, descriptor: ModelDescriptor) -> DsmModel:
    """Load and checksum-validate the model a descriptor points to."""
    path = Path(root_dir) / descriptor.file_path
    if not path.is_file():
        raise RegistryError(f"model file missing: {path}")
    return _deserialize_model(path.read_bytes(), str(path))


def list_models(
    root_dir: str | Path,
    language: str | None = None,
    kind: str | None = None,
) -> list[ModelDescriptor]:
    """Manifest entries in manifest order, optionally filtered."""
    entries = _read_manifest(root_dir)
    if language is not None:
        entries = [e for e in entries if e.language == language]
    if kind is not None:
        entries = [e for e in entries if e.kind == kind]
    return entries


def find_descriptor(
    root_dir: str | Path,
    language: str,
    kind: str,
    fingerprint: str | None = None,
) -> ModelDescriptor | None:
    """Most recently registered descriptor matching the key, or None."""
    entries = list_models(root_dir, language=language, kind=kind)
    if fingerprint is not None:
        entries = [e for e in entries if e.fingerprint == fingerprint]
    return entries[-1] if entries else None


def check_registry(root_dir: str | Path) -> list[str]:
    """fsck-style sweep: verify every manifest entry loads and validates.

    Returns a list of human-readable problems; empty means consistent.
    """
    problems = []
    try:
        entries = _read_manifest(root_dir)
    except RegistryError as exc:
        return [str(exc)]
    seen = set()
    for entry in entries:
        if entry.key in seen:
            problems.append(f"duplicate manifest key {entry.key}")
        seen.add(entry.key)
        try:
            load_model(root_dir, entry)
        except RegistryError as exc:
            problems.append(str(exc))
    return problems


class ModelCache:
    """Thread-safe LRU cache over registry loads.

    Keeps at most ``capacity`` models resident; a full 12-language, 3-model
    registry may not fit in memory at once.
    """

    def __init__(self, root_dir: str | Path, capacity: int = DEFAULT_CACHE_CAPACITY):
        self.root = Path(root_dir)
        self.capacity = capacity
        self._lock = threading.Lock()
        self._cache: OrderedDict[tuple, tuple[ModelDescriptor, DsmModel]] = OrderedDict()

    def get(
        self, language: str, kind: str, fingerprint: str | None = None
    ) -> tuple[ModelDescriptor, DsmModel] | None:
        """Descriptor and model for the newest matching registry entry."""
        descriptor = find_descriptor(self.root, language, kind, fingerprint)
        if descriptor is None:
            return None
        with self._lock:
            hit = self._cache.get(descriptor.key)
            if hit is not None:
                self._cache.move_to_end(descriptor.key)
                return hit
        model = load_model(self.root, descriptor)
        with self._lock:
            self._cache[descriptor.key] = (descriptor, model)
            self._cache.move_to_end(descriptor.key)
            while len(self._cache) > self.capacity:
                self._cache.popitem(last=False)
        return descriptor, model

    def loaded_count(self) -> int:
        with self._lock:
            return len(self._cache)
