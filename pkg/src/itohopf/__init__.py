"""Exact symbolic computation in the Itô Hopf algebra of tensors.

The package implements, over any finite-dimensional associative algebra given
by rational structure constants:

* the sticky-shuffle (Itô) product and deconcatenation coproduct on the
  tensor space, with multi-leg superscript calculus,
* truncated formal power series in a deformation parameter, with exact
  inversion and quasi-inversion,
* directed single and double product integrals in both orientations,
* classical and quantum Yang-Baxter checks at every level, the grid-product
  identities connecting them, and the exact linear hierarchy solver,
* the deformation of the coproduct by conjugation with a double product
  integral, its coassociativity check, and the semiclassical cobracket.

All arithmetic is exact (``fractions.Fraction``); there are no floats and no
tolerances anywhere.
"""

from .algebra import (
    UNIT,
    AlgebraDef,
    AlgebraElt,
    AlgebraMismatchError,
    LegCountError,
    LegTensor,
    UnitalElt,
    commutator,
    rat,
)
from .hseries import HSeries, OrderMismatchError, invert, quasi_inverse, unit_series
from .prodint import (
    DoubleProduct,
    HalfTensor,
    MixedTensor,
    decapitate,
    decapitated_backward,
    decapitated_forward,
    double_bf,
    double_fb,
    driving_from_leg_pairs,
    single_backward,
    single_forward,
)
from .quantise import (
    CheckResult,
    DeformedCoproduct,
    QuantisationContext,
    build_context,
    coassociativity_check,
    cobracket,
    cobracket_closed_form,
    coproduct_grid,
    counit_side,
    deformed_coproduct,
    projection_component,
    quasitriangularity_check,
)
from .tensorhopf import (
    MultiTensorElt,
    TensorElt,
    lift_leg_tensor,
    pure_ito_part,
    sticky_shuffle,
)
from .ybe import (
    SolutionSet,
    YbeReport,
    cybe_check,
    cybe_residual,
    grid_product,
    hierarchy_residual,
    hierarchy_solve,
    qybe_check,
    qybe_residual,
    toy_qybe_check,
    toy_qybe_residual,
    triple_grid_check,
    triple_grid_residual,
)

__all__ = [
    "UNIT",
    "AlgebraDef",
    "AlgebraElt",
    "AlgebraMismatchError",
    "CheckResult",
    "DeformedCoproduct",
    "DoubleProduct",
    "HSeries",
    "HalfTensor",
    "LegCountError",
    "LegTensor",
    "MixedTensor",
    "MultiTensorElt",
    "OrderMismatchError",
    "QuantisationContext",
    "SolutionSet",
    "TensorElt",
    "UnitalElt",
    "YbeReport",
    "build_context",
    "coassociativity_check",
    "cobracket",
    "cobracket_closed_form",
    "commutator",
    "coproduct_grid",
    "counit_side",
    "cybe_check",
    "cybe_residual",
    "decapitate",
    "decapitated_backward",
    "decapitated_forward",
    "deformed_coproduct",
    "double_bf",
    "double_fb",
    "driving_from_leg_pairs",
    "grid_product",
    "hierarchy_residual",
    "hierarchy_solve",
    "invert",
    "lift_leg_tensor",
    "projection_component",
    "pure_ito_part",
    "qybe_check",
    "qybe_residual",
    "quasi_inverse",
    "quasitriangularity_check",
    "rat",
    "single_backward",
    "single_forward",
    "sticky_shuffle",
    "toy_qybe_check",
    "toy_qybe_residual",
    "triple_grid_check",
    "triple_grid_residual",
    "unit_series",
]

__version__ = "0.1.0"
