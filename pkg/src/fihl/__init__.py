"""fihl: exact homology of the injective hom modules over finite sets
and injections, at desk scale.

Subpackage map: partitions and tableaux are the combinatorial substrate,
linalg the exact/modular kernels, characters the decomposition machinery,
transfer the degree-zero story, koszul the full complex, theta the
overlap coefficient, crit the predictions, cli the command surface.
"""

__version__ = "0.1.0"

from ._modp import BACKEND as kernel_backend

__all__ = ["kernel_backend", "__version__"]
