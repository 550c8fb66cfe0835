"""Symplectic dilations, Gaussian states and Gaussian channels."""

from .channels import (
    BosonicChannel,
    QuasifreeChannel,
    SymplecticChannel,
    compose_symplectic,
    dilation_to_channel,
    in_F0,
    in_K,
    quasifree_valid,
    sample_F_membership,
    symplectic_to_quasifree,
)
from .core import (
    Tolerance,
    direct_sum,
    hermitian_psd_check,
    is_symplectic,
    make_J,
    mode_permutation,
    random_symplectic,
    symplectic_spectrum,
    williamson,
)
from .dilation import (
    Dilation,
    dilate_2x2,
    dilate_general,
    dilate_positive_definite,
    dilate_product,
    dilate_symmetric,
)
from .states import (
    GaussianState,
    coherent,
    displace,
    is_pure,
    marginal,
    new_state,
    symplectic_transform,
    tensor,
    thermal,
    vacuum,
    von_neumann_entropy,
    williamson_parameters,
)

__version__ = "0.1.0"
