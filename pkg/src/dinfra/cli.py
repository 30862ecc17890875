"""Operator command line: build models, evaluate, query, report, serve.

Exit codes: 0 success, 2 usage or configuration error, 3 data or coverage
error. Every informational command takes ``--json`` for machine-readable
output. ``DINFRA_MODEL_DIR`` and ``DINFRA_PORT`` provide defaults for the
registry root and the service port.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import SUPPORTED_LANGUAGES, CorpusSource
from .errors import (
    ConfigError,
    CorpusError,
    DataError,
    DinfraError,
    RegistryError,
    TermNotFoundError,
    UndefinedSimilarityError,
)
from .evaluation import DATASET_NAMES, OOV_POLICIES, evaluate, load_dataset
from .models import MODEL_KINDS
from .pipeline import (
    TrainingOptions,
    build_model,
    corpus_id_for,
    parse_bool,
    parse_config_file,
)
from .registry import (
    check_registry,
    default_model_dir,
    find_descriptor,
    list_models,
    load_model,
    save_model,
)
from .similarity import Measure, relatedness_to_targets

USAGE_ERROR = 2
DATA_ERROR = 3

_MEASURE_NAMES = tuple(m.value for m in Measure)


def _add_model_dir(parser):
    parser.add_argument(
        "--model-dir",
        default=None,
        help="registry root (default: $DINFRA_MODEL_DIR or ./models)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dinfra",
        description="Train, evaluate, query and serve distributional semantic models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="train a model from a corpus and register it")
    p_build.add_argument("--model", required=True, choices=MODEL_KINDS)
    p_build.add_argument("--lang", required=True, choices=SUPPORTED_LANGUAGES)
    p_build.add_argument("--corpus", required=True, help="corpus file (one document per line)")
    p_build.add_argument(
        "--corpus-format", choices=("lines", "files"), default="lines",
        help="'lines' for one-doc-per-line files, 'files' for one-doc-per-file directories",
    )
    p_build.add_argument("--config", default=None, help="key = value config file")
    p_build.add_argument("--dim", type=int, default=None, help="LSA dimensions (default 300)")
    p_build.add_argument("--window", type=int, default=None, help="co-occurrence window (default 5)")
    p_build.add_argument("--min-count", type=int, default=None, help="vocabulary threshold (default 5)")
    p_build.add_argument("--vector-length", type=int, default=None, help="RI dimensionality (default 15000)")
    p_build.add_argument("--nnz", type=int, default=None, help="RI index vector non-zeros (default 8)")
    p_build.add_argument("--seed", type=int, default=None, help="reproducibility seed (default 0)")
    p_build.add_argument("--weighting", choices=("log-entropy", "tf-idf", "raw"), default=None)
    p_build.add_argument("--max-concepts", type=int, default=None, help="ESA vector cap (default 10000)")
    p_build.add_argument("--stemming", action="store_true", help="experimental en-only suffix stripping")
    p_build.add_argument("--stopwords", default=None, help="stopword file overriding the bundled list")
    p_build.add_argument("--overwrite", action="store_true", help="replace a registered model with the same key")
    p_build.add_argument("--json", action="store_true")
    _add_model_dir(p_build)

    p_eval = sub.add_parser("eval", help="evaluate a registered model against a gold dataset")
    p_eval.add_argument("--dataset", required=True, choices=DATASET_NAMES)
    p_eval.add_argument("--lang", required=True, choices=SUPPORTED_LANGUAGES)
    p_eval.add_argument("--model", required=True, choices=MODEL_KINDS)
    p_eval.add_argument("--measure", required=True, choices=_MEASURE_NAMES)
    p_eval.add_argument("--oov", choices=OOV_POLICIES, default="skip")
    p_eval.add_argument("--datasets-dir", default="datasets")
    p_eval.add_argument("--json", action="store_true")
    _add_model_dir(p_eval)

    p_query = sub.add_parser("query", help="score a main term against targets")
    p_query.add_argument("--main", required=True)
    p_query.add_argument("--targets", required=True, help="comma-separated target terms")
    p_query.add_argument("--lang", required=True, choices=SUPPORTED_LANGUAGES)
    p_query.add_argument("--model", required=True, choices=MODEL_KINDS)
    p_query.add_argument("--measure", required=True, choices=_MEASURE_NAMES)
    p_query.add_argument("--json", action="store_true")
    _add_model_dir(p_query)

    p_serve = sub.add_parser("serve", help="run the JSON webservice until interrupted")
    p_serve.add_argument("--port", type=int, default=None, help="default: $DINFRA_PORT or 8008")
    p_serve.add_argument("--host", default="0.0.0.0")
    p_serve.add_argument("--datasets-dir", default="datasets")
    p_serve.add_argument("--ui-dir", default=None, help="static UI directory served at /ui/")
    _add_model_dir(p_serve)

    p_models = sub.add_parser("models", help="list registered models")
    p_models.add_argument("--lang", default=None, choices=SUPPORTED_LANGUAGES)
    p_models.add_argument("--kind", default=None, choices=MODEL_KINDS)
    p_models.add_argument("--check", action="store_true", help="verify files and checksums")
    p_models.add_argument("--json", action="store_true")
    _add_model_dir(p_models)

    p_report = sub.add_parser(
        "report", help="evaluate a grid of models/datasets/measures, write TSV + charts"
    )
    p_report.add_argument("--lang", required=True, choices=SUPPORTED_LANGUAGES)
    p_report.add_argument("--models", default="ri,lsa,esa", help="comma-separated kinds")
    p_report.add_argument("--datasets", default="ws353,rg,mc", help="comma-separated dataset names")
    p_report.add_argument("--measures", default="cosine,euclidean,correlation")
    p_report.add_argument("--oov", choices=OOV_POLICIES, default="skip")
    p_report.add_argument("--out-dir", default="reports")
    p_report.add_argument("--datasets-dir", default="datasets")
    p_report.add_argument("--json", action="store_true")
    _add_model_dir(p_report)

    return parser


def _model_dir(args) -> Path:
    return Path(args.model_dir) if args.model_dir else default_model_dir()


def _apply_config_file(args):
    """Config file supplies defaults; explicit flags win."""
    if not args.config:
        return
    values = parse_config_file(args.config)
    mapping = {
        "min_count": ("min_count", int),
        "window_size": ("window", int),
        "dim": ("dim", int),
        "vector_length": ("vector_length", int),
        "nnz": ("nnz", int),
        "seed": ("seed", int),
        "weighting": ("weighting", str),
        "max_concepts": ("max_concepts", int),
    }
    for key, (attr, cast) in mapping.items():
        if key in values and getattr(args, attr) is None:
            setattr(args, attr, cast(values[key]))
    if "stemming" in values and not args.stemming:
        args.stemming = parse_bool(values["stemming"])
    if "language" in values and values["language"] != args.lang:
        raise ConfigError(
            f"config file language {values['language']!r} conflicts with --lang {args.lang!r}"
        )


def _cmd_build(args) -> int:
    _apply_config_file(args)
    options = TrainingOptions(
        min_count=args.min_count if args.min_count is not None else 5,
        window_size=args.window if args.window is not None else 5,
        stemming=args.stemming,
        stopwords_path=args.stopwords,
        vector_length=args.vector_length if args.vector_length is not None else 15000,
        nnz=args.nnz if args.nnz is not None else 8,
        seed=args.seed if args.seed is not None else 0,
        dim=args.dim if args.dim is not None else 300,
        weighting=args.weighting or "log-entropy",
        max_concepts=args.max_concepts if args.max_concepts is not None else 10000,
    )
    source = CorpusSource(path=args.corpus, language=args.lang, fmt=args.corpus_format)
    model = build_model(args.model, source, options)
    descriptor = save_model(
        model, _model_dir(args), corpus_id=corpus_id_for(source), overwrite=args.overwrite
    )
    if args.json:
        print(json.dumps({**descriptor.to_dict(), "vocab_size": len(model.vocab)}))
    else:
        print(
            f"built {descriptor.kind} model for {descriptor.language}: "
            f"{len(model.vocab)} terms, fingerprint {descriptor.fingerprint}, "
            f"saved to {descriptor.file_path}"
        )
    return 0


def _load_registered(args):
    root = _model_dir(args)
    descriptor = find_descriptor(root, args.lang, args.model)
    if descriptor is None:
        raise RegistryError(f"no {args.model} model registered for {args.lang!r} in {root}")
    return load_model(root, descriptor)


def _cmd_eval(args) -> int:
    model = _load_registered(args)
    dataset = load_dataset(args.dataset, args.lang, args.datasets_dir)
    result = evaluate(model, dataset, Measure.parse(args.measure), oov_policy=args.oov)
    if args.json:
        print(
            json.dumps(
                {
                    "rho": result.rho,
                    "n_scored": result.n_scored,
                    "n_skipped": result.n_skipped,
                    "dataset": result.dataset,
                    "language": result.language,
                    "measure": result.measure,
                    "model_kind": result.model_kind,
                    "oov_policy": result.policy,
                }
            )
        )
    else:
        print(f"{result.rho:.6f} {result.n_scored} {result.n_skipped}")
    return 0


def _cmd_query(args) -> int:
    model = _load_registered(args)
    targets = [t for t in (part.strip() for part in args.targets.split(",")) if t]
    if not targets:
        raise ConfigError("no target terms given")
    results = relatedness_to_targets(model, args.main, targets, Measure.parse(args.measure))
    if args.json:
        print(json.dumps({"main_term": args.main, "results": results}))
    else:
        for entry in results:
            if "error" in entry:
                print(f"{entry['target']}\tERROR\t{entry['error']}")
            else:
                print(f"{entry['target']}\t{entry['score']:.6f}\t{entry['raw']:.6f}")
    return 0


def _cmd_serve(args) -> int:
    from .service import serve

    serve(
        model_dir=_model_dir(args),
        datasets_dir=args.datasets_dir,
        ui_dir=args.ui_dir,
        host=args.host,
        port=args.port,
    )
    return 0


def _cmd_models(args) -> int:
    root = _model_dir(args)
    entries = list_models(root, language=args.lang, kind=args.kind)
    if args.json:
        print(json.dumps([e.to_dict() for e in entries]))
    else:
        for entry in entries:
            print(
                f"{entry.language}\t{entry.kind}\t{entry.fingerprint}\t"
                f"{entry.created_at}\t{entry.file_path}"
            )
    if args.check:
        problems = check_registry(root)
        for problem in problems:
            print(f"PROBLEM: {problem}", file=sys.stderr)
        if problems:
            return DATA_ERROR
    return 0


def _cmd_report(args) -> int:
    from .report import generate_report

    outcome = generate_report(
        model_dir=_model_dir(args),
        datasets_dir=args.datasets_dir,
        language=args.lang,
        kinds=[k for k in args.models.split(",") if k],
        datasets=[d for d in args.datasets.split(",") if d],
        measures=[m for m in args.measures.split(",") if m],
        out_dir=args.out_dir,
        oov_policy=args.oov,
    )
    if args.json:
        print(
            json.dumps(
                {
                    "tsv": str(outcome["tsv"]),
                    "figures": [str(p) for p in outcome["figures"]],
                    "rows": outcome["rows"],
                }
            )
        )
    else:
        for row in outcome["rows"]:
            rho = row["rho"] or "-"
            print(f"{row['model']}\t{row['dataset']}\t{row['measure']}\t{rho}\t{row['status']}")
        print(f"wrote {outcome['tsv']}")
        for figure in outcome["figures"]:
            print(f"wrote {figure}")
    return 0


_COMMANDS = {
    "build": _cmd_build,
    "eval": _cmd_eval,
    "query": _cmd_query,
    "serve": _cmd_serve,
    "models": _cmd_models,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, CorpusError, RegistryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (DataError, TermNotFoundError, UndefinedSimilarityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    except DinfraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    except KeyboardInterrupt:
        return 0


if __name__ == "__main__":
    sys.exit(main())
