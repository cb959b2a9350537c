"""
ACERL - adaptive contrastive edge representation learning for network data.

This module provides a clean public surface for the package.
Consumers should import from here for stable API access.
"""

from .api import *  # noqa: F401,F403
from .api import __all__  # noqa: F401

__version__ = "0.1.0"
