"""Image preprocessing for frozen ImageNet backbones: resize to 224x224,
scale to [0, 1], normalize with the ImageNet channel statistics. No
augmentation: exported features must be deterministic."""

import numpy as np
from PIL import Image

IMAGE_SIZE = 224
IMAGENET_MEAN = np.array([0.485, 0.456, 0.406], dtype=np.float32)
IMAGENET_STD = np.array([0.229, 0.224, 0.225], dtype=np.float32)


def preprocess_image(image: Image.Image) -> np.ndarray:
    """PIL image -> normalized float32 CHW array."""
    image = image.convert("RGB").resize((IMAGE_SIZE, IMAGE_SIZE), Image.BILINEAR)
    arr = np.asarray(image, dtype=np.float32) / 255.0
    arr = (arr - IMAGENET_MEAN) / IMAGENET_STD
    return arr.transpose(2, 0, 1)


def preprocess_file(path) -> np.ndarray:
    with Image.open(path) as image:
        return preprocess_image(image)
