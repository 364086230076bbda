"""Generalized Euclidean distance matrices: construction, spectra, pseudoinverses and audits."""

__version__ = "0.1.0"

from .edm import Gedm, PointRealization, build, build_e, is_edm, realize, recover_laplacian
from .laplacian import GeneralizedLaplacian, from_graph, from_psd, random_laplacian, validate
from .matcore import EigenDecomposition, InertiaTriple, Tolerance

__all__ = [
    "EigenDecomposition",
    "Gedm",
    "GeneralizedLaplacian",
    "InertiaTriple",
    "PointRealization",
    "Tolerance",
    "build",
    "build_e",
    "from_graph",
    "from_psd",
    "is_edm",
    "random_laplacian",
    "realize",
    "recover_laplacian",
    "validate",
]
