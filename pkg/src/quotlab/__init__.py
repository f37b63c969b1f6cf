"""Exact invariant theory of finite group(-scheme) actions on truncated algebras."""

from __future__ import annotations

from .errors import (
    ActionError,
    FrameworkBug,
    PreconditionError,
    QuotlabError,
    StructuralError,
    UnsupportedBaseError,
)

__version__ = "0.1.0"

__all__ = [
    "ActionError",
    "FrameworkBug",
    "PreconditionError",
    "QuotlabError",
    "StructuralError",
    "UnsupportedBaseError",
    "__version__",
]
