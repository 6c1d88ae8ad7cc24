"""Exact cohomology of line bundles on complete simplicial stacky fans.

Everything is computed over exact integer and rational arithmetic: fan
validation, class group structure, cohomology dimensions, H-triviality
scans, and the search for degenerate piecewise-linear functions that
certify infinite families of classes with vanishing cohomology.
"""

from .catalog import all_catalog_fans, catalog_fan, catalog_names
from .cohomline import (
    CapExceededError,
    ForbiddenCone,
    PropernessError,
    box_classes,
    cohomology,
    first_forbidden,
    forbidden_cone,
    in_interior_ZI,
    is_h_trivial,
    outside_all_interiors,
    scan_h_trivial,
    sign_polyhedron,
)
from .exactlin import (
    DEFAULT_CAP,
    IntegerPoints,
    LinearSystem,
    PointsStatus,
    feasible,
    integer_points,
    smith_normal_form,
    system,
)
from .fan import (
    FanError,
    FanFormatError,
    FanValidationError,
    StackyFan,
    collinear_pairs,
    fan_fingerprint,
    fan_to_json,
    load_fan,
    make_fan,
    neighborhood,
)
from .homology import (
    DeltaCapError,
    DeltaFamily,
    SimplicialComplex,
    complex_CI,
    delta_family,
    delta_fast_lowdim,
    delta_set,
    reduced_betti,
    supp,
)
from .picard import (
    LineBundleClass,
    PicStructure,
    class_from_canonical,
    class_of,
    class_to_json,
    classes_equal,
    pic_structure,
)
from .plsearch import (
    CriterionReport,
    LambdaPolytope,
    PLFunction,
    cone_linear_part,
    criterion_report,
    degenerate_space,
    family_class,
    find_degenerate_psi,
    lambda_polytope,
    normalize_at_ray,
    pl_function,
    sign_changes,
)

__version__ = "0.1.0"
