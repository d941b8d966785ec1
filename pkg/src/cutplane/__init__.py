"""Reconstruction of the jump of a cut-plane analytic function from noisy Taylor data.

The jump ``F`` on the cut ``[1, inf)`` is expanded in the orthonormal basis
``phi_m(x) = i^m sqrt(2) L_m(2/x) exp(-1/x) / x``; its coefficients are
finite sums of Taylor data weighted by Pollaczek polynomials.  With finite,
noisy data the expansion diverges and is truncated where the partial
energies stop sitting on a plateau.
"""

from .data import (CATALOG, NoiseSpec, TestProblem, add_noise, forward_taylor,
                   get_problem, hausdorff_statistic, load_custom, mse, norm_squared,
                   relative_l2_error, snr_db)
from .errors import (BelowFirstTermError, CutplaneError, DegreeCapError, DomainError,
                     EnvelopeUndefinedError, NoPlateauError, QuadratureError)
from .reconstruct import (JumpSamples, basis_phi_real, cauchy_eval, jump_function,
                          reconstruct, taylor_partial)
from .specfun import (laguerre, pollaczek_asymptotic, pollaczek_imag_axis,
                      pollaczek_oracle, pollaczek_real, pollaczek_weight)
from .spectral import (Envelope, SpectralSeries, TaylorData, compute_spectral, envelope,
                       partial_energy)
from .truncation import PlateauParams, PlateauReport, detect_k0, k0_from_norm

__version__ = "0.1.0"
