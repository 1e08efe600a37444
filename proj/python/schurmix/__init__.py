"""Exact chi-square mixture law of the scalar Schur complement of a noncentral
Wishart matrix: weights, transforms, distribution functions, sampling, and a
simulation-vs-analytic validation battery."""

from ._schurmix import *  # noqa: F401,F403
from ._schurmix import __version__  # noqa: F401
