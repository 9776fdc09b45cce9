"""Service API: `uvicorn hosweep.service:app`."""

from .app import app, create_app

__all__ = ["app", "create_app"]
