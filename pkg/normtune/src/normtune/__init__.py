"""Fine-tune a small text-to-text model on normalization corpora and serve it.

The package consumes the companion toolkit's file formats — JSONL corpora and
split-manifest JSON — and answers the same line-delimited JSON request
protocol its evaluation harness speaks, so a trained checkpoint can be scored
with ``normkit evaluate --backend cmd:"normtune serve --checkpoint DIR"``.
"""

__version__ = "0.1.0"

from .config import TrainConfig
from .data import Example, Manifest, read_examples, read_manifest
from .errors import ConfigError, DataError, TuneError
from .server import serve
from .training import TrainResult, train

__all__ = [
    "TrainConfig",
    "Example",
    "Manifest",
    "read_examples",
    "read_manifest",
    "ConfigError",
    "DataError",
    "TuneError",
    "serve",
    "train",
    "TrainResult",
    "__version__",
]
