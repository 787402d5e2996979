"""Exact computational kit for quivers with symmetries.

Folds graphs with admissible automorphisms into (generally non-symmetric)
Cartan data, computes Kac-Moody root and weight multiplicities, generates
highest-weight crystals with diagram-automorphism fixed-point counts, checks
the quiver-variety linear algebra, and assembles twisted affine character
series.  All arithmetic is exact (integers and fractions); no floats.
"""

from foldkit.quiver import (
    Graph,
    Orientation,
    AdmissibleAutomorphism,
    Quiver,
    QuiverError,
    QuiverParseError,
    parse_quiver,
    validate_admissible,
    orbits,
    compatible_orientation,
)
from foldkit.cartan import (
    CartanDatum,
    GCM,
    TypeClass,
    cartan_from_graph,
    fold,
    gcm,
    classify,
    stable_subset,
)
from foldkit.multiplicity import (
    MultTable,
    positive_roots,
    freudenthal,
    graded_dim_uminus,
    weyl_dim,
)
from foldkit.crystal import CrystalGraph, CrystalNode, generate, aut_action, fixed_census
from foldkit.characters import AffineData, QSeries, m_w, normalized_character, ch_a, verify_cor322

__version__ = "0.1.0"
