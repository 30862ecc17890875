import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dinfra.corpus import (
    CorpusSource,
    LanguageRules,
    build_vocabulary,
    count_cooccurrences,
    count_term_document,
)
from dinfra.esa import EsaConfig, train_esa
from dinfra.lsa import LsaConfig, train_lsa
from dinfra.registry import save_model
from dinfra.ri import RiConfig, train_ri

FIXTURES_DIR = Path(__file__).parent / "fixtures"
REPO_ROOT = Path(__file__).parent.parent
DATASETS_DIR = REPO_ROOT / "datasets"
MINI_CORPUS = REPO_ROOT / "data" / "mini" / "en.txt"
MINI_GOLD = REPO_ROOT / "data" / "mini" / "gold-en.tsv"

# Small English corpus with stable co-occurrence structure. Includes the
# mother/wife/child/love cluster and enough Miller & Charles vocabulary to
# give dataset evaluations non-trivial coverage.
FAMILY_DOCS = [
    "the mother loves her child",
    "a wife and a mother care for the child with love",
    "the mother and the father love the child",
    "mother and wife share love at home",
    "the child loves the mother and the father",
    "a father and a mother raise the child with love",
    "the wife loves her husband and the child",
    "love binds mother wife and child together",
    "the husband and the wife love their child",
    "a mother sings to the child with love",
    "the father drives the car to work",
    "the car is a fast automobile",
    "an automobile is a car for the road",
    "the car and the automobile share the road",
    "a journey by car is a long voyage",
    "the voyage was a long journey by sea",
    "a journey begins and the voyage ends",
    "the sailor sailed the coast on a voyage",
    "the coast meets the shore by the sea",
    "waves reach the shore along the coast",
    "the boy walked along the shore",
    "the boy and the lad played by the coast",
    "a lad is a young boy",
    "the boy and the lad ate fruit",
    "fresh fruit is good food",
    "the food stall sells fruit and bread",
    "the bird ate fruit from the garden",
    "a bird sang in the garden at noon",
    "the bird and the crane flew over the coast",
    "the crane stood near the shore at noon",
    "the magician and the wizard performed magic",
    "a wizard is a magician of old tales",
    "the monk lived near the forest",
    "the forest covers the hill and the woodland",
    "the woodland and the forest meet the hill",
    "a graveyard lies beyond the forest",
    "the cemetery and the graveyard are quiet",
    "the monk walked from the cemetery to the forest",
    "the journey to the coast made the child smile",
    "the mother took the child on a voyage by car",
    "the boy gave the mother fruit with love",
    "the wife and the husband walked the shore at noon",
]


def write_corpus(docs, directory, language="en", name="corpus.txt"):
    path = Path(directory) / name
    path.write_text("\n".join(docs) + "\n", encoding="utf-8")
    return CorpusSource(path=path, language=language)


def train_family_models(source):
    rules = LanguageRules("en")
    vocab = build_vocabulary(source, min_count=2, stopwords=(), rules=rules)
    ri_config = RiConfig(vector_length=512, nnz=8, window_size=3, seed=7)
    ri_model = train_ri(count_cooccurrences(source, vocab, 3), vocab, ri_config)
    term_doc = count_term_document(source, vocab)
    lsa_model = train_lsa(term_doc, vocab, LsaConfig(k=12, svd_seed=7))
    esa_model = train_esa(term_doc, vocab, EsaConfig())
    return {"ri": ri_model, "lsa": lsa_model, "esa": esa_model}


@pytest.fixture(scope="session")
def family_source(tmp_path_factory):
    return write_corpus(FAMILY_DOCS, tmp_path_factory.mktemp("family-corpus"))


@pytest.fixture(scope="session")
def family_models(family_source):
    return train_family_models(family_source)


@pytest.fixture(scope="session")
def family_registry(tmp_path_factory, family_models):
    root = tmp_path_factory.mktemp("registry")
    for model in family_models.values():
        save_model(model, root, corpus_id="family-fixture")
    return root


@pytest.fixture(scope="session")
def service_datasets_dir(tmp_path_factory):
    """Datasets directory combining the bundled rg/mc files and the ws353 fixture."""
    root = tmp_path_factory.mktemp("datasets")
    for name in ("rg", "mc"):
        target = root / name
        target.mkdir()
        (target / "en.tsv").write_bytes((DATASETS_DIR / name / "en.tsv").read_bytes())
    ws = root / "ws353"
    ws.mkdir()
    (ws / "en.tsv").write_bytes((FIXTURES_DIR / "ws353" / "en.tsv").read_bytes())
    return root
