"""Opt-in end-to-end check on EuroSAT RGB with a pre-trained ConvNeXt.

Needs a local copy of EuroSAT (class-per-subdirectory, 27,000 images)
and downloadable ImageNet weights, neither of which this environment
ships; set KANHEAD_EUROSAT_DIR to run it.
"""

import os

import pytest

EUROSAT_DIR = os.environ.get("KANHEAD_EUROSAT_DIR")

pytestmark = pytest.mark.skipif(
    not EUROSAT_DIR, reason="set KANHEAD_EUROSAT_DIR to an EuroSAT RGB image root"
)


def test_convnext_head_accuracy(tmp_path):
    from kfv_exporter import ExportSpec, export_features

    out = tmp_path / "eurosat_convnext.kfv1"
    export_features(
        ExportSpec(backbone="convnext", image_root=EUROSAT_DIR, output=str(out))
    )

    import kanhead

    dataset = kanhead.load_features(out)
    assert dataset.n_samples == 27000
    split = kanhead.stratified_split(dataset, (0.70, 0.15, 0.15), seed=0)
    assert (split.train.size, split.val.size, split.test.size) == (18900, 4050, 4050)

    def run(width):
        cfg = kanhead.TrainConfig(
            head_kind="kan", hidden_width=width, n_classes=10, epochs=5,
            lr=1e-3, seed=0, dataset_path=str(out),
        )
        return kanhead.train(cfg)[-1].test_acc

    acc32 = run(32)
    assert acc32 >= 0.90
    acc256 = run(256)
    assert abs(acc32 - acc256) <= 0.02
