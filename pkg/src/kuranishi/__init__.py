"""Exact computer algebra for Kuranishi models and their d-space truncations."""

from .poly import Poly, PolyError, PolyParseError, PolyRing, RingMorphism, compose_morphisms, parse_poly
from .groebner import (GroebnerBasis, GroebnerGuardError, Ideal, buchberger, eliminate,
                       ideal_combine, ideal_contained, ideal_equal, ideal_intersection,
                       ideal_member, ideal_power, ideal_product, ideal_sum, morphism_kernel,
                       normal_form)
from .macaulay import macaulay_member
from .ssets import (FiniteSimplicialSet, MonotoneMap, Simplex, connected_components,
                    disjoint_union, level_simplices, standard_simplex, structure_map)
from .srings import (Homotopy, SectionData, SimplicialRing, SRMorphism, build_morphism,
                     compose_sr, constant_homotopy, identity_morphism, kuranishi_model,
                     path_object, solve_homotopies, tensor_simplicial, verify_homotopy,
                     verify_morphism, verify_simplicial_identities)
from .moore import (HomotopyGroup, NotACycleError, Obstruction, boundary_ideal, class_equal,
                    cycle_ideal, homotopy_group, normalized_ideal, pi_obstruction)
from .truncation import (DOneMorphism, DSpacePresentation, DTwoMorphism, truncate_homotopy,
                         truncate_morphism, truncate_object)
from .dspace import (check_interchange, compose_1, horizontal_compose, identity_1,
                     one_morphisms_equal, scheme_theoretically_equal, verify_1morphism,
                     verify_2morphism, verify_dspace, vertical_compose)
from .workspace import Workspace, WorkspaceError, parse_workspace, print_workspace

__version__ = "0.1.0"
