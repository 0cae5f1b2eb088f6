from .backbones import SUPPORTED, ExportError, build_backbone, feature_dim
from .export import ExportSpec, export_features, list_class_images
from .kfv1 import write_kfv1
from .preprocess import IMAGENET_MEAN, IMAGENET_STD, preprocess_file, preprocess_image

__version__ = "0.1.0"
