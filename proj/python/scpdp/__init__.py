"""Dual-rail self-checking gate family: gate semantics, netlist compilation
and stuck-at fault-injection campaigns."""

from scpdp._core import (
    DualNetlist,
    Netlist,
    __version__,
    boolean_difference,
    canonical_sbox,
    check_equivalence,
    eval_gate,
    exhaustive_single_fault,
    gate_truth_check,
    rail_not,
    run_campaign,
    sbox_netlist,
    single_fault_exhaustive_gate,
    trial_rng_next,
)

__all__ = [
    "DualNetlist",
    "Netlist",
    "__version__",
    "boolean_difference",
    "canonical_sbox",
    "check_equivalence",
    "eval_gate",
    "exhaustive_single_fault",
    "gate_truth_check",
    "rail_not",
    "run_campaign",
    "sbox_netlist",
    "single_fault_exhaustive_gate",
    "trial_rng_next",
]
