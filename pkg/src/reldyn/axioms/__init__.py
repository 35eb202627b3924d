"""Axiom checks, theorem verifiers and scenario generators."""

from .checks import (
    ALIASES,
    CHECKS,
    SPEC_REL,
    SPEC_REL_DYN,
    check_ax_center,
    check_ax_center_plus,
    check_ax_ev,
    check_ax_exists_inecoll,
    check_ax_forall_inecoll,
    check_ax_median,
    check_ax_ph,
    check_ax_self,
    check_ax_sim_dist,
    check_ax_speed,
    check_ax_thex,
    check_cons_four_moment,
    check_cons_mass,
    check_cons_moment,
    resolve_name,
    run_check,
)
from .generators import (
    CORRUPTIONS,
    ModelBuilder,
    corrupt_scenario,
    equivalence_batch,
    equivalence_scenario,
    generate_cons_mass_counterexample,
    generate_cons_moment_counterexample,
    generate_standard_model,
    random_mass_formula_model,
    random_standard_model,
)
from .report import CheckReport, Verdict, combine
from .theorems import (
    EQUIVALENT_FORMS,
    equivalence_values,
    mass_formula_construction,
    run_equivalence_batch,
    verify_conservation_equivalence,
    verify_mass_formula,
    verify_mass_formula_construction,
)
