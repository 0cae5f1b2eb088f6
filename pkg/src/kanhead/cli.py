"""Command-line entry point.

Subcommands: train, compare, export-synthetic, inspect, benchmark.
Exit code 0 on success, 1 on any package error, 2 on bad usage.
"""

import argparse
import sys

import numpy as np

from ._backend import BACKEND
from .data import load_features, save_features, synthetic_blobs
from .errors import KanheadError
from .train import compare_experiment, config_from_file, train


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="kanhead")
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="train a classifier head from a config file")
    p_train.add_argument("--config", required=True)

    p_cmp = sub.add_parser("compare", help="train two arms and emit a side-by-side report")
    p_cmp.add_argument("--config-a", required=True)
    p_cmp.add_argument("--config-b", required=True)
    p_cmp.add_argument("--out", default=None, help="report directory (default: arm A's output_dir)")

    p_syn = sub.add_parser("export-synthetic", help="write the synthetic blob dataset as KFV1")
    p_syn.add_argument("--out", required=True)
    p_syn.add_argument("--samples", type=int, default=200)
    p_syn.add_argument("--dim", type=int, default=8)
    p_syn.add_argument("--classes", type=int, default=3)
    p_syn.add_argument("--seed", type=int, default=0)

    p_ins = sub.add_parser("inspect", help="print header, shape, and class histogram")
    p_ins.add_argument("--dataset", required=True)

    p_bench = sub.add_parser("benchmark", help="time the compiled vs pure-python kernels")
    p_bench.add_argument("--batch", type=int, default=64)
    p_bench.add_argument("--in-dim", type=int, default=768)
    p_bench.add_argument("--out-dim", type=int, default=32)
    p_bench.add_argument("--repeats", type=int, default=20)

    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except KanheadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    if args.command == "train":
        config = config_from_file(args.config)
        metrics = train(config)
        for m in metrics:
            print(
                f"epoch {m.epoch}: loss {m.train_loss:.4f} "
                f"train {m.train_acc:.4f} val {m.val_acc:.4f} test {m.test_acc:.4f}"
            )
        if config.output_dir:
            print(f"metrics written to {config.output_dir}")
        return 0

    if args.command == "compare":
        report = compare_experiment(
            config_from_file(args.config_a), config_from_file(args.config_b), args.out
        )
        for key in ("arm_a", "arm_b"):
            arm = report[key]
            final = arm["epochs"][-1]
            print(
                f"{arm['label']}: {arm['parameter_count']} params, "
                f"final test acc {final['test_acc']:.4f} "
                f"({arm['wall_time_s']:.1f}s)"
            )
        return 0

    if args.command == "export-synthetic":
        dataset = synthetic_blobs(args.samples, args.dim, args.classes, args.seed)
        save_features(dataset, args.out)
        print(
            f"wrote {dataset.n_samples} x {dataset.feature_dim} features, "
            f"{dataset.n_classes} classes -> {args.out}"
        )
        return 0

    if args.command == "inspect":
        dataset = load_features(args.dataset)
        print(f"samples:     {dataset.n_samples}")
        print(f"feature_dim: {dataset.feature_dim}")
        print(f"n_classes:   {dataset.n_classes}")
        print(f"backbone:    {dataset.backbone_tag or '(none)'}")
        counts = np.bincount(dataset.labels, minlength=dataset.n_classes)
        for name, count in zip(dataset.class_names, counts):
            print(f"  {name}: {count}")
        return 0

    if args.command == "benchmark":
        _benchmark(args)
        return 0

    raise AssertionError(f"unhandled command {args.command}")


def _benchmark(args):
    import time

    from . import _kernels_py
    from .kan import kan_backward, kan_forward, kan_layer_init
    from .splines import make_uniform_grid

    try:
        from . import _kernels
        backends = [("cython", _kernels), ("python", _kernels_py)]
    except ImportError:
        print("compiled extension not built; timing the python backend only")
        backends = [("python", _kernels_py)]

    rng = np.random.default_rng(0)
    grid = make_uniform_grid(-1.0, 1.0, 5, 3)
    layer = kan_layer_init(args.in_dim, args.out_dim, grid, 0)
    x = rng.uniform(-1.0, 1.0, size=(args.batch, args.in_dim))
    grad = rng.normal(size=(args.batch, args.out_dim))
    print(f"active backend: {BACKEND}; layer {args.in_dim} -> {args.out_dim}, batch {args.batch}")

    import kanhead.kan as kan_mod

    for name, impl in backends:
        saved = kan_mod.impl
        kan_mod.impl = impl
        try:
            kan_forward(layer, x)  # warm up
            started = time.perf_counter()
            for _ in range(args.repeats):
                out, cache = kan_forward(layer, x)
                kan_backward(layer, cache, grad)
            elapsed = (time.perf_counter() - started) / args.repeats
        finally:
            kan_mod.impl = saved
        print(f"  {name:7s} forward+backward: {elapsed * 1e3:8.2f} ms/iter")


if __name__ == "__main__":
    sys.exit(main())
