"""Backend selection for the hot loops.

The compiled Cython kernels are used when importable; otherwise the
pure-Python mirrors are loaded. Set ``POLYADD_PURE_PYTHON=1`` to force the
fallback (useful for benchmarking and for checking both paths agree).
"""

import os


def _load():
    if not os.environ.get("POLYADD_PURE_PYTHON"):
        try:
            from . import _oracle_ext, _polygamma_ext

            return "cython", _polygamma_ext, _oracle_ext
        except ImportError:
            pass
    from . import _oracle_py, _polygamma_py

    return "python", _polygamma_py, _oracle_py


BACKEND, polygamma_impl, oracle_impl = _load()


def load_backend(name):
    """Return ``(polygamma_module, oracle_module)`` for ``"cython"`` or ``"python"``."""
    if name == "python":
        from . import _oracle_py, _polygamma_py

        return _polygamma_py, _oracle_py
    if name == "cython":
        from . import _oracle_ext, _polygamma_ext

        return _polygamma_ext, _oracle_ext
    raise ValueError(f"unknown backend {name!r}")
