"""Scar Wigner functions of quantized cat maps on the torus."""

from .classical import (CatMapSpec, STANDARD_MAP, HyperbolicData,
                        PeriodicOrbit, stability, cayley_matrix,
                        cayley_reconstruct, center_action, periodic_points,
                        orbit_of_point, det_identity_check)
from .errors import NumericalInvariantError
from .torus import (TorusHilbertSpace, propagator, translation, reflection,
                    reflection_half, coherent_state, ScarParams, scar_state,
                    spectral_operator)
from .wigner import (WignerGrid, wigner_of_state, wigner_of_operator,
                     weyl_symbol_of_operator, spectral_wigner,
                     localization_metric, winding_set,
                     cat_weyl_symbol_closed_form)
from .semiclassical import (scar_phase, phi_for_phase, stable_unstable_coords,
                            scar_wigner_plane, scar_wigner_gaussian,
                            scar_wigner_torus, fixed_point_data)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
