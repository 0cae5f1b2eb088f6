"""Feature dataset I/O, normalization, and stratified splitting.

On-disk formats:
  KFV1 (little-endian, no padding):
    magic "KFV1" | u32 version=1 | u32 n_samples | u32 feature_dim |
    u32 n_classes | u16 tag_len + UTF-8 backbone tag |
    n_classes x (u16 len + UTF-8 class name) |
    n_samples*feature_dim f32 features (row-major) | n_samples u16 labels
  CSV: header `label,class_name,f0..f{D-1}`, one sample per row.
"""

import csv
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainError, FormatError, IoError, LabelError

MAGIC = b"KFV1"
VERSION = 1


@dataclass
class Normalization:
    per_dimension: bool
    center: np.ndarray
    scale: np.ndarray


@dataclass
class FeatureDataset:
    features: np.ndarray  # [n_samples, feature_dim] float32
    labels: np.ndarray  # [n_samples] int
    class_names: list
    backbone_tag: str = ""
    normalization: Normalization | None = None

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def feature_dim(self) -> int:
        return self.features.shape[1]

    @property
    def n_classes(self) -> int:
        return len(self.class_names)


@dataclass
class DatasetSplit:
    train: np.ndarray
    val: np.ndarray
    test: np.ndarray


def _validate(ds: FeatureDataset):
    if ds.n_classes < 2:
        raise FormatError(f"need at least 2 classes, got {ds.n_classes}")
    if ds.labels.shape != (ds.n_samples,):
        raise FormatError("label vector length does not match sample count")
    if np.any(ds.labels < 0) or np.any(ds.labels >= ds.n_classes):
        raise LabelError(
            f"labels must lie in [0, {ds.n_classes}), got range "
            f"[{ds.labels.min()}, {ds.labels.max()}]"
        )


def save_features(dataset: FeatureDataset, path) -> None:
    """Write the exact KFV1 layout. Empty datasets are rejected."""
    if dataset.n_samples == 0:
        raise FormatError("refusing to save an empty dataset")
    if dataset.n_classes > 0xFFFF:
        raise FormatError("KFV1 stores labels as u16; too many classes")
    _validate(dataset)
    parts = [
        MAGIC,
        struct.pack(
            "<IIII", VERSION, dataset.n_samples, dataset.feature_dim, dataset.n_classes
        ),
    ]
    tag = dataset.backbone_tag.encode("utf-8")
    parts.append(struct.pack("<H", len(tag)))
    parts.append(tag)
    for name in dataset.class_names:
        raw = str(name).encode("utf-8")
        parts.append(struct.pack("<H", len(raw)))
        parts.append(raw)
    feats = np.ascontiguousarray(dataset.features, dtype="<f4")
    parts.append(feats.tobytes())
    parts.append(np.ascontiguousarray(dataset.labels, dtype="<u2").tobytes())
    try:
        Path(path).write_bytes(b"".join(parts))
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def load_features(path) -> FeatureDataset:
    """Load a KFV1 file, or a CSV file when the extension is .csv."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return _load_csv(path)
    try:
        blob = path.read_bytes()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    return _parse_kfv1(blob, str(path))


def _parse_kfv1(blob: bytes, origin: str) -> FeatureDataset:
    if len(blob) < 20 or blob[:4] != MAGIC:
        raise FormatError(f"{origin}: not a KFV1 file (bad magic)")
    version, n_samples, feature_dim, n_classes = struct.unpack_from("<IIII", blob, 4)
    if version != VERSION:
        raise FormatError(f"{origin}: unsupported KFV1 version {version}")
    off = 20
    try:
        (tag_len,) = struct.unpack_from("<H", blob, off)
        off += 2
        if len(blob) < off + tag_len:
            raise FormatError(f"{origin}: truncated backbone tag")
        tag = blob[off : off + tag_len].decode("utf-8")
        off += tag_len
        class_names = []
        for _ in range(n_classes):
            (name_len,) = struct.unpack_from("<H", blob, off)
            off += 2
            if len(blob) < off + name_len:
                raise FormatError(f"{origin}: truncated class table")
            class_names.append(blob[off : off + name_len].decode("utf-8"))
            off += name_len
    except struct.error as exc:
        raise FormatError(f"{origin}: truncated header") from exc
    feat_bytes = 4 * n_samples * feature_dim
    label_bytes = 2 * n_samples
    if len(blob) != off + feat_bytes + label_bytes:
        raise FormatError(
            f"{origin}: payload length {len(blob) - off} does not match "
            f"declared shape ({n_samples} x {feature_dim})"
        )
    features = np.frombuffer(blob, dtype="<f4", count=n_samples * feature_dim, offset=off)
    features = features.reshape(n_samples, feature_dim).copy()
    labels = np.frombuffer(blob, dtype="<u2", count=n_samples, offset=off + feat_bytes)
    ds = FeatureDataset(features, labels.astype(np.int64), class_names, tag)
    _validate(ds)
    return ds


def _load_csv(path: Path) -> FeatureDataset:
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise FormatError(f"{path}: empty CSV")
    header = rows[0]
    dim = len(header) - 2
    if dim < 1 or header[:2] != ["label", "class_name"] or header[2:] != [
        f"f{i}" for i in range(dim)
    ]:
        raise FormatError(f"{path}: expected header label,class_name,f0..f{{D-1}}")
    labels, feats, names = [], [], {}
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise FormatError(f"{path}:{lineno}: wrong column count")
        try:
            label = int(row[0])
            feats.append([float(v) for v in row[2:]])
        except ValueError as exc:
            raise FormatError(f"{path}:{lineno}: {exc}") from exc
        if label < 0:
            raise LabelError(f"{path}:{lineno}: negative label")
        if names.setdefault(label, row[1]) != row[1]:
            raise FormatError(f"{path}:{lineno}: class name conflict for label {label}")
        labels.append(label)
    n_classes = max(labels) + 1
    missing = [c for c in range(n_classes) if c not in names]
    if missing:
        raise FormatError(f"{path}: no samples for labels {missing}")
    ds = FeatureDataset(
        np.asarray(feats, dtype=np.float32),
        np.asarray(labels, dtype=np.int64),
        [names[c] for c in range(n_classes)],
        backbone_tag="csv",
    )
    _validate(ds)
    return ds


def normalize_fit(train_features: np.ndarray) -> Normalization:
    """Per-dimension affine map fitted on the training split only:
    center = mean, scale = 3 * std (std floored at 1e-8), so features
    land mostly inside the [-1, 1] spline grid."""
    x = np.asarray(train_features, dtype=np.float64)
    center = x.mean(axis=0)
    scale = 3.0 * np.maximum(x.std(axis=0), 1e-8)
    return Normalization(per_dimension=True, center=center, scale=scale)


def normalize_apply(record: Normalization, features: np.ndarray) -> np.ndarray:
    return (np.asarray(features, dtype=np.float64) - record.center) / record.scale


def stratified_split(dataset: FeatureDataset, fractions=(0.70, 0.15, 0.15), seed: int = 0) -> DatasetSplit:
    """Deterministic per-class stratified split.

    Fractional quotas are carried across classes so the overall counts
    match the fractions exactly (each class within +-1 sample).
    """
    fractions = tuple(float(f) for f in fractions)
    if len(fractions) != 3 or abs(sum(fractions) - 1.0) > 1e-9 or min(fractions) < 0:
        raise DomainError(f"fractions must be 3 non-negatives summing to 1, got {fractions}")
    rng = np.random.default_rng(seed)
    buckets = [[], [], []]
    carry = np.zeros(3)
    for c in range(dataset.n_classes):
        idx = np.flatnonzero(dataset.labels == c)
        if idx.size < 3:
            raise DomainError(f"class {c} has only {idx.size} samples (need >= 3)")
        idx = rng.permutation(idx)
        ideal = np.array(fractions) * idx.size + carry
        counts = np.floor(ideal).astype(int)
        leftover = idx.size - counts.sum()
        frac = ideal - counts
        # largest remainder first; ties resolved in train/val/test order
        for s in sorted(range(3), key=lambda s: (-frac[s], s))[:leftover]:
            counts[s] += 1
        carry = ideal - counts
        start = 0
        for s in range(3):
            buckets[s].append(idx[start : start + counts[s]])
            start += counts[s]
    parts = [np.sort(np.concatenate(b)) for b in buckets]
    return DatasetSplit(train=parts[0], val=parts[1], test=parts[2])


def synthetic_blobs(n_samples: int = 200, feature_dim: int = 8, n_classes: int = 3,
                    seed: int = 0, center_scale: float = 5.0, noise: float = 0.5) -> FeatureDataset:
    """Well-separated Gaussian blobs, one axis-aligned center per class.

    Center separation is center_scale * sqrt(2) (10 sigma at the
    defaults), so a nearest-centroid classifier is essentially perfect.
    """
    if n_classes > feature_dim:
        raise DomainError("need n_classes <= feature_dim for axis-aligned centers")
    rng = np.random.default_rng(seed)
    counts = [n_samples // n_classes + (1 if c < n_samples % n_classes else 0)
              for c in range(n_classes)]
    labels = np.repeat(np.arange(n_classes), counts)
    centers = np.zeros((n_classes, feature_dim))
    centers[np.arange(n_classes), np.arange(n_classes)] = center_scale
    feats = centers[labels] + rng.normal(0.0, noise, size=(n_samples, feature_dim))
    return FeatureDataset(
        feats.astype(np.float32),
        labels.astype(np.int64),
        [f"blob{c}" for c in range(n_classes)],
        backbone_tag=f"synthetic-blobs-seed{seed}",
    )
