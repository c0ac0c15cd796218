"""HTTP service exposing the rate-region computations as JSON endpoints."""

from .app import create_app

__all__ = ["create_app"]
