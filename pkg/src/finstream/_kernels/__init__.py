"""Closure kernel, compiled when the extension built, pure Python otherwise."""

try:
    from ._closure_cy import BACKEND, closure_rows
except ImportError:  # extension not built
    from ._closure_py import BACKEND, closure_rows

__all__ = ["closure_rows", "BACKEND"]
