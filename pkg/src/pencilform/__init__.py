"""Exact classification of matrix pencils with non-vanishing discriminant.

Invariants, canonical constructions, SL-orbit parametrizations, and
brute-force validation oracles over the rationals and finite fields.
"""

__version__ = "0.1.0"

from .fields import (  # noqa: F401
    FieldCtx,
    FieldElem,
    ext_norm,
    extension_field,
    field_inv,
    parse_field,
    prime_field,
    rational_field,
    square_class,
)
from .poly import (  # noqa: F401
    BinaryForm,
    Poly,
    PointOnP1,
    SchemeS,
    factor,
    form_split,
    scheme_of,
    squarefree_decompose,
)
