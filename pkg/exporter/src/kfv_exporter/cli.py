"""CLI: kfv-export export --backbone convnext --images <dir> --out features.kfv1"""

import argparse
import sys

from .backbones import SUPPORTED, ExportError
from .export import ExportSpec, export_features


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="kfv-export")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("export", help="export frozen-backbone features to KFV1")
    p.add_argument("--backbone", required=True, choices=SUPPORTED)
    p.add_argument("--images", required=True, help="class-per-subdirectory image root")
    p.add_argument("--out", required=True)
    p.add_argument("--batch", type=int, default=64)
    p.add_argument("--device", default="cpu")
    args = parser.parse_args(argv)

    spec = ExportSpec(
        backbone=args.backbone,
        image_root=args.images,
        output=args.out,
        batch_size=args.batch,
        device=args.device,
    )
    try:
        path = export_features(spec)
    except ExportError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
