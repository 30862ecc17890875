#!/usr/bin/env python3
"""Regenerate the bundled synthetic evaluation corpus under data/mini/.

The corpus has 1000 documents drawn from 10 topics with fully disjoint
vocabularies (40 terms each, Zipf-distributed within a topic), plus a
40-pair gold set: 20 within-topic pairs rated high and 20 cross-topic pairs
rated low. Disjoint topic vocabularies guarantee that cross-topic term
pairs share no document support at all.

Deterministic: rerunning this script reproduces the committed files.
"""

import argparse
from pathlib import Path

import numpy as np

SEED = 20240811
N_TOPICS = 10
TERMS_PER_TOPIC = 40
DOCS_PER_TOPIC = 100
MEAN_DOC_LEN = 25
MIN_DOC_LEN = 12

STEMS = ("aqua", "bryo", "cirr", "dune", "echo", "fjor", "glac", "heli", "iris", "jazz")

WITHIN_SCORE = 9.0
CROSS_SCORE = 1.0


def topic_terms(topic: int) -> list[str]:
    return [f"{STEMS[topic]}{j:02d}" for j in range(TERMS_PER_TOPIC)]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="data/mini")
    args = parser.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    rng = np.random.default_rng(SEED)
    ranks = np.arange(1, TERMS_PER_TOPIC + 1, dtype=np.float64)
    zipf = (1.0 / ranks) / (1.0 / ranks).sum()

    docs = []
    for doc_id in range(N_TOPICS * DOCS_PER_TOPIC):
        topic = doc_id % N_TOPICS
        terms = topic_terms(topic)
        length = max(MIN_DOC_LEN, int(rng.poisson(MEAN_DOC_LEN)))
        tokens = rng.choice(terms, size=length, p=zipf)
        docs.append(" ".join(tokens))
    (out / "en.txt").write_text("\n".join(docs) + "\n", encoding="utf-8")

    pairs = []
    for topic in range(N_TOPICS):
        terms = topic_terms(topic)
        pairs.append((terms[0], terms[1], WITHIN_SCORE))
        pairs.append((terms[2], terms[3], WITHIN_SCORE))
    for topic in range(N_TOPICS):
        here = topic_terms(topic)
        near = topic_terms((topic + 1) % N_TOPICS)
        far = topic_terms((topic + 3) % N_TOPICS)
        pairs.append((here[0], near[1], CROSS_SCORE))
        pairs.append((here[2], far[3], CROSS_SCORE))
    lines = ["# Synthetic gold pairs for the bundled mini corpus (0-10 scale)."]
    lines += [f"{a}\t{b}\t{score}" for a, b, score in pairs]
    (out / "gold-en.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    print(f"wrote {out / 'en.txt'} ({len(docs)} documents)")
    print(f"wrote {out / 'gold-en.tsv'} ({len(pairs)} pairs)")


if __name__ == "__main__":
    main()
