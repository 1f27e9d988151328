"""Correlated graph pair alignment: samplers, k-core alignment estimators,
cycle-path decompositions, generating functions, and tail bounds."""

try:
    from ._core import *  # noqa: F401,F403
except ImportError:  # extension staged next to the package in the build tree
    from _core import *  # type: ignore  # noqa: F401,F403

__all__ = [name for name in dir() if not name.startswith("_")]
