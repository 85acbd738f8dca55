"""Nash equilibria of stochastic power-allocation games over Gaussian
interference channels."""

try:
    from ._powergames import *  # noqa: F401,F403
    from . import _powergames as _core  # noqa: F401
except ImportError:
    from _powergames import *  # noqa: F401,F403
    import _powergames as _core  # noqa: F401

__version__ = "0.1.0"
