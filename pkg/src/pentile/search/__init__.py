"""Backtracking tiling search: length program, certificates, family pruning."""
from .lengths import LengthProgram, turning, turning_affine
from .certificate import (CertFeasible, CertUnknown, InfeasibleCertified, closure_residual, closure_rows,
                          feasibility_certificate)
from .families import FamilyCondition, applicable, detect_family, families, family
from .driver import (INCONCLUSIVE, NO_TILING, PRUNED, CaseContext, CaseVerdict, InvalidCase, Limits,
                     branch_run, search_all, search_case, search_graph, select_branch_vertex, settle)
