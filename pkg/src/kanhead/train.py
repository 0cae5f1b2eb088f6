"""Training harness: minibatch loop, per-epoch metrics, and the two-arm
comparison experiment. Everything is deterministic in the config seed:
the split, the head init, and the per-epoch shuffle (seed + epoch)."""

import concurrent.futures
import csv
import json
import os
import time
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from .data import load_features, normalize_apply, normalize_fit, stratified_split
from .errors import FormatError, MismatchError, NumericError
from .heads import build_head
from .optim import adam_init, adam_step, sgd_step, softmax_cross_entropy


@dataclass
class TrainConfig:
    head_kind: str = "kan"  # "kan" | "mlp"
    hidden_width: int = 32
    n_classes: int = 10
    epochs: int = 5
    batch_size: int = 64
    optimizer: str = "adam"  # "adam" | "sgd"
    lr: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    grid_intervals: int = 5
    grid_degree: int = 3
    grid_min: float = -1.0
    grid_max: float = 1.0
    seed: int = 0
    dataset_path: str = ""
    output_dir: str = ""
    # epochs whose per-iteration losses are recorded
    iteration_loss_epochs: tuple = (0,)


@dataclass
class EpochMetrics:
    epoch: int
    train_loss: float
    train_acc: float
    val_acc: float
    test_acc: float
    per_iteration_loss: list = field(default_factory=list)
    wall_time_s: float = 0.0
    parameter_count: int = 0


def config_from_file(path) -> TrainConfig:
    """Read a config as JSON or as flat key=value lines."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        raw = json.loads(text)
    else:
        raw = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise FormatError(f"{path}:{lineno}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            raw[key] = value
    grid = raw.pop("grid", None)
    if isinstance(grid, dict):
        raw.setdefault("grid_intervals", grid.get("intervals", 5))
        raw.setdefault("grid_degree", grid.get("degree", 3))
        lo, hi = grid.get("range", (-1.0, 1.0))
        raw.setdefault("grid_min", lo)
        raw.setdefault("grid_max", hi)
    defaults = TrainConfig()
    fields = {f: type(getattr(defaults, f)) for f in vars(defaults)}
    kwargs = {}
    for key, value in raw.items():
        if key not in fields:
            raise FormatError(f"{path}: unknown config key {key!r}")
        kind = fields[key]
        if kind is tuple:
            kwargs[key] = tuple(int(v) for v in (value if isinstance(value, (list, tuple))
                                                 else str(value).split(",")))
        elif kind is bool:
            kwargs[key] = value if isinstance(value, bool) else str(value).lower() == "true"
        else:
            kwargs[key] = kind(value)
    return TrainConfig(**kwargs)


def evaluate(head, features, labels) -> float:
    """Fraction of argmax-correct predictions; ties go to the lowest
    class index. KANHEAD_THREADS>1 fans the batch out across threads."""
    labels = np.asarray(labels)
    if labels.size == 0:
        return 0.0
    threads = int(os.environ.get("KANHEAD_THREADS", "1") or "1")
    chunks = np.array_split(np.arange(labels.size), max(1, min(threads, labels.size)))

    def count_correct(idx):
        logits, _ = head.forward(features[idx])
        return int(np.sum(np.argmax(logits, axis=1) == labels[idx]))

    if len(chunks) == 1:
        correct = count_correct(chunks[0])
    else:
        with concurrent.futures.ThreadPoolExecutor(len(chunks)) as pool:
            correct = sum(pool.map(count_correct, chunks))
    return correct / labels.size


def train(config: TrainConfig):
    """Run the full procedure: load, split, normalize, train the head,
    and record per-epoch metrics (plus per-iteration losses for the
    configured epochs). Writes metrics.csv/metrics.json when
    config.output_dir is set. Returns the list of EpochMetrics."""
    dataset = load_features(config.dataset_path)
    if dataset.n_classes != config.n_classes:
        raise MismatchError(
            f"config says {config.n_classes} classes but dataset has {dataset.n_classes}"
        )
    split = stratified_split(dataset, (0.70, 0.15, 0.15), config.seed)
    norm = normalize_fit(dataset.features[split.train])
    x_train = normalize_apply(norm, dataset.features[split.train])
    x_val = normalize_apply(norm, dataset.features[split.val])
    x_test = normalize_apply(norm, dataset.features[split.test])
    y_train = dataset.labels[split.train]
    y_val = dataset.labels[split.val]
    y_test = dataset.labels[split.test]

    head = build_head(config, dataset.feature_dim)
    n_params = head.parameter_count()
    state = None
    if config.optimizer == "adam":
        state = adam_init(head.params(), config.lr, config.beta1, config.beta2, config.epsilon)
    elif config.optimizer != "sgd":
        raise FormatError(f"unknown optimizer {config.optimizer!r}")

    n_train = y_train.size
    metrics = []
    for epoch in range(config.epochs):
        started = time.perf_counter()
        order = np.random.default_rng(config.seed + epoch).permutation(n_train)
        batch_losses = []
        for start in range(0, n_train, config.batch_size):
            idx = order[start : start + config.batch_size]
            logits, caches = head.forward(x_train[idx])
            loss, grad_logits = softmax_cross_entropy(logits, y_train[idx])
            if not np.isfinite(loss):
                raise NumericError(f"loss diverged to {loss} at epoch {epoch}")
            grads = head.backward(caches, grad_logits)
            if state is None:
                head.set_params(sgd_step(head.params(), grads, config.lr))
            else:
                params, state = adam_step(head.params(), grads, state)
                head.set_params(params)
            batch_losses.append(loss)
        logits, _ = head.forward(x_train)
        epoch_loss, _ = softmax_cross_entropy(logits, y_train)
        metrics.append(
            EpochMetrics(
                epoch=epoch,
                train_loss=epoch_loss,
                train_acc=evaluate(head, x_train, y_train),
                val_acc=evaluate(head, x_val, y_val),
                test_acc=evaluate(head, x_test, y_test),
                per_iteration_loss=(
                    batch_losses if epoch in config.iteration_loss_epochs else []
                ),
                wall_time_s=time.perf_counter() - started,
                parameter_count=n_params,
            )
        )
    if config.output_dir:
        write_metrics(config, metrics, Path(config.output_dir))
    return metrics


# wall_time_s deliberately stays out of the CSV: the CSV is the
# determinism surface (bitwise-identical for identical config + seed)
CSV_COLUMNS = ("epoch", "train_loss", "train_acc", "val_acc", "test_acc", "parameter_count")


def write_metrics(config: TrainConfig, metrics, out_dir: Path):
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "metrics.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for m in metrics:
            writer.writerow(
                [m.epoch, repr(m.train_loss), repr(m.train_acc), repr(m.val_acc),
                 repr(m.test_acc), m.parameter_count]
            )
    record = {"config": asdict(config), "epochs": [asdict(m) for m in metrics]}
    with open(out_dir / "metrics.json", "w") as fh:
        json.dump(record, fh, indent=2)
        fh.write("\n")


def compare_experiment(config_a: TrainConfig, config_b: TrainConfig, output_dir=None):
    """Run two arms on the same dataset and seed, emit a side-by-side
    per-epoch table (CSV + JSON), and return the report dict. Both arms
    see byte-identical batches: the shuffle depends only on seed/epoch."""
    if config_a.dataset_path != config_b.dataset_path:
        raise MismatchError("comparison arms must use the same dataset")
    if config_a.seed != config_b.seed:
        raise MismatchError("comparison arms must use the same seed")
    if config_a.epochs != config_b.epochs:
        raise MismatchError("comparison arms must train for the same epochs")
    out_dir = Path(output_dir) if output_dir else (
        Path(config_a.output_dir) if config_a.output_dir else None
    )
    arms = {}
    for tag, cfg in (("a", config_a), ("b", config_b)):
        sub = replace(cfg, output_dir=str(out_dir / f"arm_{tag}") if out_dir else "")
        started = time.perf_counter()
        arms[tag] = {
            "label": f"{cfg.head_kind}-{cfg.hidden_width}",
            "config": asdict(cfg),
            "metrics": train(sub),
            "wall_time_s": time.perf_counter() - started,
        }
        arms[tag]["parameter_count"] = arms[tag]["metrics"][0].parameter_count
    report = {
        "arm_a": _arm_record(arms["a"]),
        "arm_b": _arm_record(arms["b"]),
    }
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
        with open(out_dir / "comparison.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["epoch",
                 "train_loss_a", "train_acc_a", "val_acc_a", "test_acc_a",
                 "train_loss_b", "train_acc_b", "val_acc_b", "test_acc_b"]
            )
            for ma, mb in zip(arms["a"]["metrics"], arms["b"]["metrics"]):
                writer.writerow(
                    [ma.epoch,
                     repr(ma.train_loss), repr(ma.train_acc), repr(ma.val_acc), repr(ma.test_acc),
                     repr(mb.train_loss), repr(mb.train_acc), repr(mb.val_acc), repr(mb.test_acc)]
                )
        with open(out_dir / "comparison.json", "w") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    return report


def _arm_record(arm):
    return {
        "label": arm["label"],
        "config": arm["config"],
        "parameter_count": arm["parameter_count"],
        "wall_time_s": arm["wall_time_s"],
        "epochs": [asdict(m) for m in arm["metrics"]],
    }
