"""Operator connections on positive semidefinite matrices.

The heavy lifting lives in the compiled extension; this package re-exports
its operations. Matrices are plain real numpy arrays; connections are the
same spec strings the command-line tool accepts, e.g. "mean geometric" or
"sum scale 0.5 mean arithmetic + scale 0.5 mean harmonic".
"""

from ._core import (
    KuboAndoError,
    catalog,
    convert,
    evaluate,
    function_value,
    induced_scalar,
    is_mean,
    norm,
    verify,
)

__all__ = [
    "KuboAndoError",
    "catalog",
    "convert",
    "evaluate",
    "function_value",
    "induced_scalar",
    "is_mean",
    "norm",
    "verify",
]
