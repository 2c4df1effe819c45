"""gwalab: exact symbolic computation for generalized Weyl algebras over
Q[z1,z2] -- smoothness certificates, Nakayama twists, and mechanical
verification of the underlying complexes."""

from .poly import Poly2, Poly4, tensor, embed_left, embed_right
from .autword import Affine, AutWord, Elementary, symbolic_jacobian
from .nccalc import (TwistLabel, delta, mu, nc_diff, nc_jacobian,
                     twisted_delta, twisted_diff)
from .gwa import GwaAlgebra, GwaElem, NakayamaMap
from .envelope import (DifferentialSet, DimensionMismatch, EnvElem, EnvMatrix,
                       ZeroPhi, build_differentials, compose, total_d_squared,
                       verify_homotopy)
from .groebner import (Certificate, EmptyInput, GBasis, buchberger,
                       contains_one, smoothness_test)
from .cohomology import (Cochain3, Cochain4, E12Canonical, E12Kernel,
                         NotACocycle, bimodule_action, build_n,
                         canonicalize_e12, cochain_d3, is_cocycle4, phi_map)
from .torwitness import (NotACommonZero, QuotientPair, epsilon_annihilation,
                         not_boundary, run_witness_chain, witness_cycle)
from .pipeline import (AnalysisReport, CatalogEntry, RelationFails,
                       UnknownEntry, analyze, builtin_catalog, get_entry,
                       run_catalog)
from .parse import (InstanceData, ParseError, UnboundParameter, eval_poly,
                    parse_autword, parse_instance)

__version__ = "0.1.0"
