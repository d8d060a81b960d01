"""Rotation- and permutation-equivariant QNN toolkit for point clouds.

The heavy lifting lives in the compiled extension ``symqnn._core``; this
package re-exports its public surface.
"""

from symqnn._core import *  # noqa: F401,F403
from symqnn._core import __version__  # noqa: F401
