"""Up-persistent Laplacians with certified one-simplex insertions."""

from .boundary import BoundaryMatrix, Chain, append_column, boundary_chain, boundary_matrix, chain_norm
from .complex import Filtration, SimplicialComplex, faces, make_simplex, vietoris_rips
from .perturbation import (
    DriftCertificate,
    InsertionDecomposition,
    certify_insertion,
    check_interlacing,
    check_lipschitz,
    check_two_sided,
    check_weyl,
    decompose_insertion,
    drift,
)
from .spectra import Spectrum, eigenvalues, numerical_rank, pad_with_zero, up_laplacian

__version__ = "0.1.0"
