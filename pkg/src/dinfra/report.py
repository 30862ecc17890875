"""Evaluation reports: delimited summary tables plus rendered figures.

Sweeps the requested (model kind, dataset, measure) grid against a registry,
writes ``report.tsv`` with one row per combination and renders one grouped
bar chart of Spearman rho per dataset as a PNG next to it.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .errors import DinfraError
from .evaluation import evaluate, load_dataset
from .registry import find_descriptor, load_model
from .similarity import Measure

_TSV_COLUMNS = (
    "language",
    "model",
    "dataset",
    "measure",
    "oov_policy",
    "rho",
    "n_scored",
    "n_skipped",
    "status",
)

_MEASURE_COLORS = {"cosine": "#4c72b0", "euclidean": "#dd8452", "correlation": "#55a868"}


def sweep(
    model_dir: str | Path,
    datasets_dir: str | Path,
    language: str,
    kinds: list[str],
    datasets: list[str],
    measures: list[str],
    oov_policy: str = "skip",
) -> list[dict]:
    """Evaluate every combination; failures become rows with an error status."""
    rows = []
    loaded = {}
    for kind in kinds:
        descriptor = find_descriptor(model_dir, language, kind)
        if descriptor is not None:
            loaded[kind] = load_model(model_dir, descriptor)
    for dataset_name in datasets:
        try:
            dataset = load_dataset(dataset_name, language, datasets_dir)
        except (DinfraError, FileNotFoundError) as exc:
            for kind in kinds:
                for measure in measures:
                    rows.append(_error_row(language, kind, dataset_name, measure, oov_policy, exc))
            continue
        for kind in kinds:
            model = loaded.get(kind)
            for measure in measures:
                if model is None:
                    rows.append(
                        _error_row(
                            language, kind, dataset_name, measure, oov_policy,
                            f"no {kind} model for {language}",
                        )
                    )
                    continue
                try:
                    result = evaluate(model, dataset, Measure.parse(measure), oov_policy)
                except DinfraError as exc:
                    rows.append(_error_row(language, kind, dataset_name, measure, oov_policy, exc))
                    continue
                rows.append(
                    {
                        "language": language,
                        "model": kind,
                        "dataset": dataset_name,
                        "measure": measure,
                        "oov_policy": oov_policy,
                        "rho": f"{result.rho:.6f}",
                        "n_scored": str(result.n_scored),
                        "n_skipped": str(result.n_skipped),
                        "status": "ok",
                    }
                )
    return rows


def _error_row(language, kind, dataset, measure, oov_policy, error) -> dict:
    return {
        "language": language,
        "model": kind,
        "dataset": dataset,
        "measure": measure,
        "oov_policy": oov_policy,
        "rho": "",
        "n_scored": "",
        "n_skipped": "",
        "status": f"error: {error}",
    }


def write_tsv(rows: list[dict], path: str | Path) -> Path:
    path = Path(path)
    lines = ["\t".join(_TSV_COLUMNS)]
    for row in rows:
        lines.append("\t".join(row[col] for col in _TSV_COLUMNS))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def render_rho_chart(rows: list[dict], dataset: str, path: str | Path) -> Path | None:
    """Grouped bar chart of rho by model kind for one dataset."""
    usable = [r for r in rows if r["dataset"] == dataset and r["status"] == "ok"]
    if not usable:
        return None
    kinds = sorted({r["model"] for r in usable})
    measures = sorted({r["measure"] for r in usable})
    width = 0.8 / len(measures)
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    for m_idx, measure in enumerate(measures):
        xs, ys = [], []
        for k_idx, kind in enumerate(kinds):
            match = [r for r in usable if r["model"] == kind and r["measure"] == measure]
            if match:
                xs.append(k_idx + m_idx * width)
                ys.append(float(match[0]["rho"]))
        ax.bar(xs, ys, width=width, label=measure, color=_MEASURE_COLORS.get(measure))
    ax.set_xticks([i + 0.4 - width / 2 for i in range(len(kinds))])
    ax.set_xticklabels([k.upper() for k in kinds])
    ax.set_ylabel("Spearman rho")
    ax.set_ylim(-0.1, 1.0)
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_title(f"{dataset} ({usable[0]['language']})")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def generate_report(
    model_dir: str | Path,
    datasets_dir: str | Path,
    language: str,
    kinds: list[str],
    datasets: list[str],
    measures: list[str],
    out_dir: str | Path,
    oov_policy: str = "skip",
) -> dict:
    """Run the sweep and write ``report.tsv`` plus one rho chart per dataset."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = sweep(model_dir, datasets_dir, language, kinds, datasets, measures, oov_policy)
    tsv_path = write_tsv(rows, out / "report.tsv")
    figures = []
    for dataset in datasets:
        figure = render_rho_chart(rows, dataset, out / f"rho_{dataset}_{language}.png")
        if figure is not None:
            figures.append(figure)
    return {"rows": rows, "tsv": tsv_path, "figures": figures}
