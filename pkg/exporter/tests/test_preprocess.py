import numpy as np
from PIL import Image

from kfv_exporter import IMAGENET_MEAN, IMAGENET_STD, preprocess_image


def test_shape_and_dtype():
    image = Image.new("RGB", (64, 64), (10, 20, 30))
    out = preprocess_image(image)
    assert out.shape == (3, 224, 224)
    assert out.dtype == np.float32


def test_solid_gray_normalizes_to_known_constants():
    # a mid-gray image must map to (0.5 - mean) / std per channel
    image = Image.new("RGB", (100, 80), (128, 128, 128))
    out = preprocess_image(image)
    expected = (128 / 255.0 - IMAGENET_MEAN) / IMAGENET_STD
    for channel in range(3):
        np.testing.assert_allclose(out[channel], expected[channel], atol=1e-6)


def test_non_square_input_resized():
    image = Image.new("L", (30, 300), 200)
    assert preprocess_image(image).shape == (3, 224, 224)


def test_deterministic():
    image = Image.new("RGB", (64, 64))
    rng = np.random.default_rng(0)
    pixels = rng.integers(0, 256, size=(64, 64, 3), dtype=np.uint8)
    image = Image.fromarray(pixels)
    np.testing.assert_array_equal(preprocess_image(image), preprocess_image(image))
