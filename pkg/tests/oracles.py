"""Independent reference implementations used only as test oracles.

Everything here is deliberately written the slow, obvious way (explicit
loops, no shared code with the package) so that agreement between the
production path and an oracle is meaningful evidence of correctness.
"""

from collections import Counter

import numpy as np


def window_pair_counts(docs, vocab_ids, window_size):
    """Brute-force ordered (target, context) pair counts over token windows.

    ``docs`` is a list of token lists; ``vocab_ids`` maps token -> id.
    Windows never cross documents; out-of-vocabulary tokens hold their
    positions but produce no counts.
    """
    counts = Counter()
    for tokens in docs:
        n = len(tokens)
        for i in range(n):
            if tokens[i] not in vocab_ids:
                continue
            for j in range(n):
                if j == i or abs(j - i) > window_size:
                    continue
                if tokens[j] not in vocab_ids:
                    continue
                counts[(vocab_ids[tokens[i]], vocab_ids[tokens[j]])] += 1
    return counts


def term_document_counts(docs, vocab_ids):
    """Brute-force (term_id, doc_id) -> count map."""
    counts = Counter()
    for doc_id, tokens in enumerate(docs):
        for token in tokens:
            if token in vocab_ids:
                counts[(vocab_ids[token], doc_id)] += 1
    return counts


def jacobi_singular_values(matrix, tol=1e-14, max_sweeps=100):
    """Singular values via one-sided Jacobi rotations.

    Independent of LAPACK: works directly on column pairs of a float64 copy
    until all columns are pairwise orthogonal. Suitable for the small dense
    matrices the oracle suite uses.
    """
    a = np.array(matrix, dtype=np.float64)
    if a.shape[0] < a.shape[1]:
        a = a.T
    n = a.shape[1]
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = float(a[:, p] @ a[:, p])
                beta = float(a[:, q] @ a[:, q])
                gamma = float(a[:, p] @ a[:, q])
                if alpha == 0.0 or beta == 0.0:
                    continue
                off = max(off, abs(gamma) / np.sqrt(alpha * beta))
                if abs(gamma) <= tol * np.sqrt(alpha * beta):
                    continue
                zeta = (beta - alpha) / (2.0 * gamma)
                t = np.sign(zeta) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                col_p = a[:, p].copy()
                a[:, p] = c * col_p - s * a[:, q]
                a[:, q] = s * col_p + c * a[:, q]
        if off <= tol:
            break
    values = np.sqrt(np.sum(a * a, axis=0))
    return np.sort(values)[::-1]


def spearman_closed_form(xs, ys):
    """1 - 6*sum(d^2) / (n*(n^2-1)); valid only for tie-free inputs."""
    xs = list(xs)
    ys = list(ys)
    n = len(xs)
    rank_x = {v: r for r, v in enumerate(sorted(xs), 1)}
    rank_y = {v: r for r, v in enumerate(sorted(ys), 1)}
    d2 = sum((rank_x[x] - rank_y[y]) ** 2 for x, y in zip(xs, ys))
    return 1.0 - 6.0 * d2 / (n * (n * n - 1))


def pearson_plain(xs, ys):
    """Textbook Pearson correlation with explicit loops."""
    n = len(xs)
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    cov = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    var_x = sum((x - mean_x) ** 2 for x in xs)
    var_y = sum((y - mean_y) ** 2 for y in ys)
    return cov / (var_x**0.5 * var_y**0.5)


def log_entropy_table(counts):
    """Log-entropy weighting computed cell by cell on a dense count matrix."""
    counts = np.asarray(counts, dtype=np.float64)
    n_terms, n_docs = counts.shape
    out = np.zeros_like(counts)
    for t in range(n_terms):
        gf = counts[t].sum()
        if gf == 0:
            continue
        entropy = 0.0
        for d in range(n_docs):
            if counts[t, d] > 0:
                p = counts[t, d] / gf
                entropy -= p * np.log(p)
        global_weight = 1.0 - entropy / np.log(n_docs) if n_docs >= 2 else 1.0
        for d in range(n_docs):
            if counts[t, d] > 0:
                out[t, d] = np.log(1.0 + counts[t, d]) * global_weight
    return out


def tfidf_table(counts):
    """TF-IDF weighting computed cell by cell on a dense count matrix."""
    counts = np.asarray(counts, dtype=np.float64)
    n_terms, n_docs = counts.shape
    out = np.zeros_like(counts)
    for t in range(n_terms):
        df = int((counts[t] > 0).sum())
        if df == 0:
            continue
        idf = np.log(n_docs / df)
        for d in range(n_docs):
            if counts[t, d] > 0:
                out[t, d] = np.log(1.0 + counts[t, d]) * idf
    return out


def ri_context_vectors_brute(docs, vocab_terms, window_size, index_vector_dense):
    """Accumulate raw RI context vectors by scanning every window pair."""
    index_of = {term: i for i, term in enumerate(vocab_terms)}
    dense_index = {term: index_vector_dense(term) for term in vocab_terms}
    dim = len(next(iter(dense_index.values())))
    vectors = {term: np.zeros(dim) for term in vocab_terms}
    for tokens in docs:
        n = len(tokens)
        for i in range(n):
            if tokens[i] not in index_of:
                continue
            lo = max(0, i - window_size)
            hi = min(n, i + window_size + 1)
            for j in range(lo, hi):
                if j == i or tokens[j] not in index_of:
                    continue
                vectors[tokens[i]] += dense_index[tokens[j]]
    return vectors
