"""Standalone KFV1 writer.

Layout (little-endian, no padding): magic "KFV1", u32 version=1,
u32 n_samples, u32 feature_dim, u32 n_classes, u16-length-prefixed UTF-8
backbone tag, n_classes u16-length-prefixed UTF-8 class names, then
n_samples*feature_dim f32 features row-major, then n_samples u16 labels.

Kept independent of the training package on purpose: the file format is
the only contract between the two, so round-trip tests cross-check two
separate implementations.
"""

import struct
from pathlib import Path

import numpy as np

MAGIC = b"KFV1"
VERSION = 1


def write_kfv1(path, features, labels, class_names, backbone_tag: str) -> None:
    features = np.ascontiguousarray(features, dtype="<f4")
    labels = np.ascontiguousarray(labels, dtype="<u2")
    n_samples, dim = features.shape
    if n_samples == 0:
        raise ValueError("refusing to write an empty feature file")
    if labels.shape != (n_samples,):
        raise ValueError("label vector length does not match sample count")
    parts = [
        MAGIC,
        struct.pack("<IIII", VERSION, n_samples, dim, len(class_names)),
    ]
    tag = backbone_tag.encode("utf-8")
    parts.append(struct.pack("<H", len(tag)))
    parts.append(tag)
    for name in class_names:
        raw = str(name).encode("utf-8")
        parts.append(struct.pack("<H", len(raw)))
        parts.append(raw)
    parts.append(features.tobytes())
    parts.append(labels.tobytes())
    Path(path).write_bytes(b"".join(parts))
