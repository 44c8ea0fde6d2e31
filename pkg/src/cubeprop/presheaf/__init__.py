"""Truncated cubical sets and the constructions used by the classifier proofs."""

from .constructions import (Coproduct, NablaData, Product, Quotient, build,
                            check_pullback_universal, copair, coproduct,
                            delta_const, delta_map, delta_transpose, gamma,
                            gamma_map, initial, nabla, nabla_data,
                            nabla_transpose, nabla_untranspose, pair_name,
                            product, pullback, quotient, terminal, to_terminal,
                            truncate, truncate_mor, tuple_name, yoneda,
                            yoneda_element)
from .core import (Subobject, TCSet, TCSetMor, check_functorial,
                   check_natural, closure, compose_mor, empty_sub, fibers,
                   full, identity_mor, image, is_epi, is_iso, is_mono,
                   morphism, subobject, validate)
from .homotopy import (NablaRel, NatPullbackReport, PathObject,
                       PointLiftStructure, check_nat_pullback, constant_paths,
                       endpoint, exp_mor, find_point_lifts,
                       gamma_section_transfer, interval_exponential, is_hprop,
                       mono_has_point_lifts, nabla_rel, path_object)
from .negation import (double_neg, level0_neg, neg_by_morphisms,
                       neg_by_points, neg_map, neg_sub)
from .search import find_iso, find_section, first_natural_map, natural_maps
