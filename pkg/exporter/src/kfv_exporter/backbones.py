"""Pre-trained torchvision backbones with their classifiers removed.

Each builder yields a module mapping a normalized [batch, 3, 224, 224]
tensor to flattened pooled features [batch, feature_dim]."""

import torch
from torch import nn
from torchvision import models

SUPPORTED = ("convnext", "vgg16", "mobilenet_v2", "efficientnet", "resnet101", "vit")

_MODEL_NAMES = {
    "convnext": "convnext_tiny",
    "vgg16": "vgg16",
    "mobilenet_v2": "mobilenet_v2",
    "efficientnet": "efficientnet_b0",
    "resnet101": "resnet101",
    "vit": "vit_b_16",
}


class ExportError(Exception):
    pass


def build_backbone(name: str, pretrained: bool = True):
    """Return (module, tag): the headless backbone in eval mode and a
    tag recording the architecture and weight version."""
    if name not in SUPPORTED:
        raise ExportError(f"unsupported backbone {name!r}; choose from {SUPPORTED}")
    model_name = _MODEL_NAMES[name]
    weights = "IMAGENET1K_V1" if pretrained else None
    try:
        model = models.get_model(model_name, weights=weights)
    except Exception as exc:
        raise ExportError(
            f"cannot load {'pre-trained ' if pretrained else ''}{model_name}: {exc}"
        ) from exc
    headless = _strip_classifier(name, model)
    headless.eval()
    for param in headless.parameters():
        param.requires_grad_(False)
    tag = f"{model_name}:{weights or 'random-init'}"
    return headless, tag


def _strip_classifier(name: str, model: nn.Module) -> nn.Module:
    if name in ("convnext", "vgg16", "efficientnet"):
        return nn.Sequential(model.features, model.avgpool, nn.Flatten(1))
    if name == "mobilenet_v2":
        return nn.Sequential(model.features, nn.AdaptiveAvgPool2d(1), nn.Flatten(1))
    if name == "resnet101":
        return nn.Sequential(*list(model.children())[:-1], nn.Flatten(1))
    # vit: the encoder forward is not a plain Sequential; drop the head
    model.heads = nn.Identity()
    return model


def feature_dim(backbone: nn.Module, device: str = "cpu") -> int:
    with torch.no_grad():
        probe = torch.zeros(1, 3, 224, 224, device=device)
        return int(backbone(probe).shape[1])
