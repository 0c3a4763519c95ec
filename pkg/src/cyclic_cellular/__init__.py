"""Exact cellular bases for wreath products A wr S_n and A-Brauer algebras D_n(A)."""

from .arith import DELTA, ONE, ZERO, Poly
from .combinatorics import GammaPoset, Order, Permutation, Tableau
from .core import (AlgElem, CellDatum, CellularityError, CyclicData, Report, TraceFunctional,
                   abelian_diagnostic, cell_module_action, cyclic_action_matrix, export_datum,
                   gram_matrix, reduce_mod, tensor_cell_datum, verify_cell_datum, verify_cyclic_data)
from .fixtures import (c2_datum, fixture, group_trace, murphy_datum, patho_datum, r1_datum,
                       young_subgroup_datum)
from .wreath import (WreathAlgebra, WreathElem, induced_cell_module, wreath_as_cell_datum,
                     wreath_cell_basis, wreath_mul, wreath_star, wreath_trace)
from .diagrams import (BrauerCategory, DiagElem, LabeledDiagram, closure, compose, factor_diagram,
                       global_trace, iota, rank_project, star_flip, tensor, x0_and_split)
from .abrauer import brauer_as_cell_datum, brauer_cell_basis, cell_chain_check

__all__ = [
    "abelian_diagnostic", "AlgElem", "brauer_as_cell_datum", "brauer_cell_basis", "BrauerCategory",
    "c2_datum", "cell_chain_check", "cell_module_action", "CellDatum", "CellularityError",
    "closure", "compose", "cyclic_action_matrix", "CyclicData", "DELTA", "DiagElem", "export_datum",
    "factor_diagram", "fixture", "GammaPoset", "global_trace", "gram_matrix", "group_trace",
    "induced_cell_module", "iota", "LabeledDiagram", "murphy_datum", "ONE", "Order", "patho_datum",
    "Permutation", "Poly", "r1_datum", "rank_project", "reduce_mod", "Report", "star_flip",
    "Tableau", "tensor", "tensor_cell_datum", "TraceFunctional", "verify_cell_datum",
    "verify_cyclic_data", "wreath_as_cell_datum", "wreath_cell_basis", "wreath_mul", "wreath_star",
    "wreath_trace", "WreathAlgebra", "WreathElem", "x0_and_split", "young_subgroup_datum", "ZERO",
]

__version__ = "0.1.0"
