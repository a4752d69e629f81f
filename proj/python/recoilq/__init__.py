"""Recoil-induced decoherence of a two-level atom."""

from ._recoilq import *  # noqa: F401,F403
from ._recoilq import __doc__  # noqa: F401
