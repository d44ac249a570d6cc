"""Effective quasirandomness and Ramsey bound propagation."""
from ._accel import BACKEND
from .bounds import (BoundConfig, BoundResult, LogReal, SmoothnessCertificate, alpha,
                     alpha_star, best_bound, degree_regularity_bounds, degree_window,
                     goodman, inductive_step_preconditions, phi, ramsey_upper_bound, rho,
                     rho_properties_check, smoothness_certificate, tau)
from .constructions import (block_graphon, certify_witness, circulant, connected_density,
                            deviation_lower_bound, gnp, paley, ramsey_exact, w_random_graph)
from .errors import BudgetError, DomainError, QuasiRamseyError, SizeError, UsageError
from .graphs import SimpleGraph
from .kernels import (EXACT, FLOAT, FiniteSpace, StepKernel, center, codegree, density,
                      embed_graph, kab_density)
from .patterns import IsoClass, PatternGraph, SubgraphCensus, canonical_form, census
from .quasirandomness import (CenteredStats, DiscrepancyReport, InequalityReport,
                              centered_stats, effective_distance_report, expansion,
                              k2a_graph_bound, verify_bipartite_global,
                              verify_general_global, verify_kab_monotone, verify_local)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
