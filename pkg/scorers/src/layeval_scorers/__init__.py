"""Adapter processes exposing neural summary metrics over NDJSON stdio/HTTP."""

from .config import SCORER_SPECS, AdapterConfig, ScorerSpec

__version__ = "0.1.0"

__all__ = ["AdapterConfig", "ScorerSpec", "SCORER_SPECS", "__version__"]
