"""Run a class-per-subdirectory image tree through a frozen backbone and
write one KFV1 feature row per image. Labels follow sorted directory
names; no augmentation, so exporting twice is bitwise identical."""

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch

from .backbones import SUPPORTED, ExportError, build_backbone
from .kfv1 import write_kfv1
from .preprocess import preprocess_file

IMAGE_EXTENSIONS = {".jpg", ".jpeg", ".png", ".bmp", ".tif", ".tiff", ".webp"}


@dataclass
class ExportSpec:
    backbone: str
    image_root: str
    output: str
    batch_size: int = 64
    device: str = "cpu"


def list_class_images(image_root):
    """(class_names, [(path, label), ...]) with labels assigned by
    sorted class-directory name."""
    root = Path(image_root)
    if not root.is_dir():
        raise ExportError(f"{root} is not a directory")
    class_dirs = sorted(d for d in root.iterdir() if d.is_dir())
    if len(class_dirs) < 2:
        raise ExportError(f"{root} must contain at least 2 class directories")
    samples = []
    for label, class_dir in enumerate(class_dirs):
        images = sorted(
            p for p in class_dir.iterdir()
            if p.is_file() and p.suffix.lower() in IMAGE_EXTENSIONS
        )
        if not images:
            raise ExportError(f"class directory {class_dir} has no images")
        samples.extend((path, label) for path in images)
    return [d.name for d in class_dirs], samples


def export_features(spec: ExportSpec, backbone=None, backbone_tag: str | None = None) -> Path:
    """Export the tree described by spec. A backbone module can be
    injected for testing; by default the pre-trained torchvision
    backbone named in the spec is loaded."""
    if backbone is None:
        backbone, backbone_tag = build_backbone(spec.backbone)
    elif backbone_tag is None:
        backbone_tag = f"{spec.backbone}:injected"
    if spec.backbone not in SUPPORTED:
        raise ExportError(f"unsupported backbone {spec.backbone!r}")
    class_names, samples = list_class_images(spec.image_root)

    backbone = backbone.to(spec.device)
    backbone.eval()
    rows = []
    labels = []
    with torch.no_grad():
        for start in range(0, len(samples), spec.batch_size):
            chunk = samples[start : start + spec.batch_size]
            try:
                batch = np.stack([preprocess_file(path) for path, _ in chunk])
            except OSError as exc:
                raise ExportError(f"unreadable image: {exc}") from exc
            tensor = torch.from_numpy(batch).to(spec.device)
            feats = backbone(tensor).flatten(1).cpu().numpy().astype(np.float32)
            rows.append(feats)
            labels.extend(label for _, label in chunk)
    features = np.concatenate(rows, axis=0)
    write_kfv1(spec.output, features, np.asarray(labels), class_names, backbone_tag)
    return Path(spec.output)
