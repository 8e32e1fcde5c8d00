"""Finite group toolkit for one-variable equations over solvable groups."""
from .constructors import (GroupAction, cyclic, direct_product, g42, iterated_wreath_dl,
                           metacyclic, remark_group, semidirect, wreath)
from .derived import (check_witness, commutator_subgroup, derived_length, derived_series,
                      in_derived, is_abelian, is_metabelian, is_solvable)
from .equations import (EquationWord, Embedding, brute_force_solve, evaluate, hope_check,
                        metabelian_obstruction, parse_word, solve_abelian)
from .group_ring import GroupRingElement, augmentation, exp_action, gr_add, gr_coefficient, gr_mul
from .groups import (CapacityError, FiniteGroup, Subgroup, WreathElement, WreathProduct,
                     commutator, conjugate, element_order, enumerate_group, generated_subgroup,
                     multiply)
from .parsing import ParseError, parse_element, parse_group_spec

__version__ = "0.1.0"
