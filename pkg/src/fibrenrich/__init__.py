"""Finite verification of fibrations, monoidal fibrations and the enrichments they induce."""
from __future__ import annotations

from .laws import Finding, verdict

__all__ = ["Finding", "verdict"]
__version__ = "0.1.0"
