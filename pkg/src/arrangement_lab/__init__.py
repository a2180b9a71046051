"""Exact invariants of complex hyperplane arrangement complements."""
from .arrangement import (
    Arrangement,
    Hyperplane,
    boolean,
    delete_restrict,
    is_essential,
    is_generic,
    parse,
    random_arrangement,
    random_generic_hyperplane,
    section,
)
from .at_infinity import cone, dense_edges, matroid_components
from .homology import (
    euler_positivity,
    homology_dims,
    homotopy_nonvanishing,
    hurewicz_certificate,
    section_homology_dims,
)
from .local_system import LocalSystem, dual, nonresonance_check, parse_local_system
from .os_algebra import circuits, nbc_profile
from .poset import (
    CharPoly,
    betti_and_euler,
    build,
    char_poly,
    char_poly_whitney,
    section_char_poly,
    truncate,
)

__version__ = "0.1.0"
