"""Command-line surface: gen, fit, eval, inspect, reproduce.

Exit codes: 0 success, 1 validation error (bad flags, bad params,
mismatched files), 2 I/O error. All file writes are atomic. The default
seed can be overridden with the ENTFLDA_SEED environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import experiments, flda, labels, reference, states

SEED_ENV_VAR = "ENTFLDA_SEED"

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad flags; the contract here is exit 1."""

    def error(self, message):
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _default_seed() -> int:
    return int(os.environ.get(SEED_ENV_VAR, "0"))


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="entflda", description="Entanglement classification with Fisher linear discriminants.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a labeled measurement dataset")
    gen.add_argument("--family", required=True, choices=experiments.DATASET_FAMILIES)
    gen.add_argument("--overlap", default="high", choices=experiments.OVERLAP_LEVELS)
    gen.add_argument("--n", type=int, default=10000, help="number of samples")
    gen.add_argument("--shots", type=int, default=None, help="shots per observable (0 = exact; default per preset)")
    gen.add_argument("--seed", type=int, default=None, help=f"master seed (default ${SEED_ENV_VAR} or 0)")
    gen.add_argument("--label-convention", default="paper", choices=labels.LABEL_CONVENTIONS)
    gen.add_argument("--balance", type=float, default=0.5, help="fraction of entangled samples")
    gen.add_argument("--out", required=True, help="output dataset path (CSV)")

    fit = sub.add_parser("fit", help="fit a discriminant model on a dataset file")
    fit.add_argument("--train", required=True, help="training dataset path")
    fit.add_argument("--epsilon", type=float, default=None, help="scatter regularizer (default: relative 1e-6)")
    fit.add_argument("--standardizer", default="zscore", choices=("zscore", "minmax", "none"))
    fit.add_argument("--model-out", required=True, help="output model path (JSON)")

    ev = sub.add_parser("eval", help="evaluate a saved model on a dataset file")
    ev.add_argument("--model", required=True, help="model path")
    ev.add_argument("--test", required=True, help="evaluation dataset path")
    ev.add_argument("--report-out", default=None, help="optional metrics report path")
    ev.add_argument("--format", default="csv", choices=("csv", "json"))

    ins = sub.add_parser("inspect", help="print spectra, PPT cuts and labels for one state")
    ins.add_argument("--family", required=True, choices=states.FAMILY_NAMES)
    ins.add_argument("--p", type=float, default=None, help="Werner mixing parameter")
    ins.add_argument("--theta0", type=float, default=None)
    ins.add_argument("--theta1", type=float, default=None)
    ins.add_argument("--a", type=float, default=None)
    ins.add_argument("--b", type=float, default=None)
    ins.add_argument("--c", type=float, default=None)
    ins.add_argument("--seed", type=int, default=None, help="seed for the random families")
    ins.add_argument("--n-qubits", type=int, default=2, help="register size for product-sep")

    rep = sub.add_parser("reproduce", help="re-run the benchmark tables and compare to reference values")
    rep.add_argument("--tables", default="1..7", help="comma list and/or ranges, e.g. 1,3 or 1..7")
    rep.add_argument("--out", required=True, help="output results path")
    rep.add_argument("--seed", type=int, default=None)
    rep.add_argument("--profile", default="ci", choices=("ci", "full"))
    rep.add_argument("--format", default="csv", choices=("csv", "json"))

    return parser


def _parse_table_ids(text: str) -> list:
    ids = set()
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ".." in chunk:
            lo, hi = chunk.split("..", 1)
            ids.update(range(int(lo), int(hi) + 1))
        else:
            ids.add(int(chunk))
    if not ids:
        raise ValueError(f"no table ids in {text!r}")
    return sorted(ids)


def _cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    config = experiments.ExperimentConfig(
        family=args.family,
        overlap=args.overlap,
        n_samples=args.n,
        balance=args.balance,
        shots=args.shots,
        label_convention=args.label_convention,
        master_seed=seed,
    )
    dataset = experiments.generate_dataset(config)
    experiments.save_dataset(dataset, args.out)
    n_ent = int(np.sum(dataset.labels == -1))
    n_sep = int(np.sum(dataset.labels == 1))
    print(f"wrote {dataset.features.shape[0]} rows to {args.out}")
    print(f"class counts: entangled(-1)={n_ent} separable(+1)={n_sep}")
    return EXIT_OK


def _cmd_fit(args) -> int:
    dataset = experiments.load_dataset(args.train)
    model = flda.fit(
        dataset.features,
        dataset.labels,
        epsilon=args.epsilon,
        standardizer=args.standardizer,
        feature_names=dataset.feature_names,
    )
    flda.save_model(model, args.model_out)
    print(f"wrote model to {args.model_out}")
    print(f"threshold: {model.threshold!r}")
    print(f"train accuracy: {model.train_accuracy!r}")
    print(f"fisher criterion: {model.fisher_j!r}")
    return EXIT_OK


def _cmd_eval(args) -> int:
    model = flda.load_model(args.model)
    dataset = experiments.load_dataset(args.test)
    if model.feature_names is not None and tuple(model.feature_names) != tuple(dataset.feature_names):
        raise ValueError("feature names in the dataset do not match the model's feature names")
    metrics = flda.evaluate(model, dataset.features, dataset.labels)
    print(f"fld threshold: {metrics['threshold']!r}")
    print(f"train accuracy: {model.train_accuracy!r}")
    print(f"test accuracy: {metrics['accuracy']!r}")
    print(f"fisher criterion: {metrics['fisher_j']!r}")
    print(f"confusion: {metrics['confusion']}")
    if args.report_out:
        payload = {
            "fld_threshold": metrics["threshold"],
            "train_accuracy": model.train_accuracy,
            "test_accuracy": metrics["accuracy"],
            "fisher_criterion": metrics["fisher_j"],
            "confusion": metrics["confusion"],
        }
        if args.format == "json":
            text = json.dumps(payload, indent=2) + "\n"
        else:
            keys = ["fld_threshold", "train_accuracy", "test_accuracy", "fisher_criterion"]
            text = ",".join(keys) + "\n" + ",".join(repr(float(payload[k])) for k in keys) + "\n"
        experiments.atomic_write(args.report_out, text)
        print(f"wrote report to {args.report_out}")
    return EXIT_OK


def _inspect_params(args) -> dict:
    family = args.family
    rng = np.random.default_rng(args.seed if args.seed is not None else _default_seed())
    if family in ("werner2", "werner3", "werner4"):
        if args.p is None:
            raise ValueError(f"{family} requires --p")
        return {"p": args.p}
    if family == "concurrence":
        if args.theta0 is None or args.theta1 is None:
            raise ValueError("concurrence requires --theta0 and --theta1")
        return {"theta0": args.theta0, "theta1": args.theta1}
    if family == "pptes-acin":
        if None in (args.a, args.b, args.c):
            raise ValueError("pptes-acin requires --a, --b and --c")
        return {"a": args.a, "b": args.b, "c": args.c}
    if family == "ppt-alt":
        return {}
    if family == "biseparable":
        _, params = experiments.sample_family_params(family, -1, "high", rng)
        return params
    # product-sep: draw one random product state of the requested size
    return experiments.product_params(args.n_qubits, rng, 1)


def _cmd_inspect(args) -> int:
    params = _inspect_params(args)
    rho = states.from_family(args.family, params)
    print(f"family: {args.family}")
    print(f"params: {json.dumps(params)}")
    eigs = np.linalg.eigvalsh(rho.matrix)
    print("eigenvalues:", " ".join(f"{v:.6f}" for v in eigs))
    report = labels.ppt_report(rho)
    for cut, value in sorted(report.min_eigenvalues.items()):
        print(f"min PT eigenvalue {cut}: {value:.6f}")
    print(f"PPT under all cuts: {report.is_ppt_all}")
    for convention in labels.LABEL_CONVENTIONS:
        print(f"label ({convention}): {labels.assign_label(args.family, params, convention):+d}")
    if rho.num_qubits == 2:
        print(f"concurrence: {labels.concurrence_wootters(rho):.6f}")
    return EXIT_OK


def _cmd_reproduce(args) -> int:
    table_ids = _parse_table_ids(args.tables)
    seed = args.seed if args.seed is not None else _default_seed()
    rows = experiments.reproduce_tables(
        table_ids, out_path=args.out, seed=seed, profile=args.profile, fmt=args.format
    )
    print(f"wrote {len(rows)} rows to {args.out}")
    print(reference.render_comparison(rows))
    return EXIT_OK


_COMMANDS = {
    "gen": _cmd_gen,
    "fit": _cmd_fit,
    "eval": _cmd_eval,
    "inspect": _cmd_inspect,
    "reproduce": _cmd_reproduce,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
