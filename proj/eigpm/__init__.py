"""Approximate top eigenvector of A^T A (offline) or E[aa^T] (online).

Thin Python surface over the C++ core: build a ``DataMatrix`` from dense
rows or a Matrix Market file and call :func:`top_eigenvector`, or open a
sample stream and call :func:`top_eigenvector_online`.
"""

from ._eig import (
    DataMatrix,
    EigenResult,
    EigError,
    ParseError,
    ReplayStream,
    SampleStream,
    SpikeStream,
    estimate_rayleigh,
    estimate_shift,
    run_harness,
    synth_instance,
    top_eigenvector,
    top_eigenvector_online,
)

__all__ = [
    "DataMatrix",
    "EigenResult",
    "EigError",
    "ParseError",
    "ReplayStream",
    "SampleStream",
    "SpikeStream",
    "estimate_rayleigh",
    "estimate_shift",
    "run_harness",
    "synth_instance",
    "top_eigenvector",
    "top_eigenvector_online",
]
