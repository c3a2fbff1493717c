"""Symmetric atomic measures on the cyclic grid with near-flat autoconvolution.

The heavy lifting lives in the compiled extension; this package re-exports it.
"""

try:
    from ._flatconv import *  # noqa: F401,F403  (installed wheel layout)
    from . import _flatconv as _impl
except ImportError:  # build-tree layout: extension sits on PYTHONPATH
    from _flatconv import *  # noqa: F401,F403
    import _flatconv as _impl

__version__ = _impl.__version__
