"""Renewal theory for mixtures of geometric and exponential laws via
Stieltjes transforms: spectral measures, pinning models, and tilted decay
rates, with closed-form Arcsine golden values and brute-force oracles."""

from .errors import (MixRenewalError, ValidationError, DomainError,
                     ConsistencyError, PrecisionLossWarning)
from .measure import (Atom, DensityPiece, MixtureMeasure,
                      DOMAIN_UNIT, DOMAIN_HALFLINE)
from .stieltjes import (BoundaryValue, stieltjes_eval, stieltjes_real,
                        hilbert, boundary, stieltjes_derivative)
from .involution import (SpectralMeasure, involute, build_spectral,
                         gap_atoms_atomic, gap_atoms_ac, residue_mass)
from .renewal import (RenewalLaw, renewal_probability, renewal_oracle,
                      renewal_limit, tilted_law, nu_tilted, decay_rate)
from .polymer import (PolymerState, beta_critical, free_energy, nu_beta,
                      partition_function, partition_oracle, contact_fraction)
from .expmix import (interarrival_density, nu_continuous, intensity,
                     intensity_oracle)
from .arcsine import (ArcsineParams, mu_v, K_v_pmf, stieltjes_mu_v_closed,
                      stieltjes_mu_v_real, stieltjes_mu_v_boundary,
                      gamma_v_beta, free_energy_arcsine, nu_v_beta,
                      partition_exact_beta0, nu_half_beta)
from .families import (uniform_piece, beta_piece, arcsine_piece,
                       piecewise_poly_piece, piece_from_spec,
                       measure_from_spec)

__version__ = "1.0.0"
