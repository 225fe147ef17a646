"""Degree maps between torsion-free highly connected Poincare complexes.

The heavy lifting lives in the compiled extension ``pcdeg._core``; this
package re-exports the user-facing names.
"""

from pcdeg._core import (
    GroupTable,
    Complex,
    Witness,
    Undecided,
    builtin_table,
    load_table,
    table_to_json,
    product_sum,
    z_complex,
    connected_sum,
    complex_from_json,
    complex_to_json,
    enumerate_complexes,
    check_degree,
    degree_set,
    is_equivalent,
    classify,
    verify_witness,
    compose_witness,
    det_star,
)

__all__ = [
    "GroupTable",
    "Complex",
    "Witness",
    "Undecided",
    "builtin_table",
    "load_table",
    "table_to_json",
    "product_sum",
    "z_complex",
    "connected_sum",
    "complex_from_json",
    "complex_to_json",
    "enumerate_complexes",
    "check_degree",
    "degree_set",
    "is_equivalent",
    "classify",
    "verify_witness",
    "compose_witness",
    "det_star",
]

__version__ = "0.1.0"
