"""Multistage Min-Sum Set Cover: LP relaxation, rounding algorithms,
permutation distances and exact oracles, backed by the C++ core."""

from ._mssc import *  # noqa: F401,F403

__all__ = [name for name in dir() if not name.startswith("_")]
