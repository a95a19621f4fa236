"""Signal-to-noise comparison of lensless compressive imaging against pinhole
and lens apertures."""

from ._core import (
    AggregationError,
    CapacityError,
    DomainError,
    Error,
    IoError,
    SensingOperator,
    SizeError,
    SweepConfig,
    UsageError,
    flat_scene,
    fwht,
    lci_variance_oracle,
    random_uniform_scene,
    ratio_lci_lai,
    ratio_lci_pai,
    run_oracle,
    run_sweep,
    run_theory,
    run_trial,
    snr_lai_theory,
    snr_lci_bound,
    snr_lci_theory,
    snr_pai_theory,
    sweep_csv,
    theory_crossover_n,
    to_db,
)

__all__ = [
    "AggregationError",
    "CapacityError",
    "DomainError",
    "Error",
    "IoError",
    "SensingOperator",
    "SizeError",
    "SweepConfig",
    "UsageError",
    "flat_scene",
    "fwht",
    "lci_variance_oracle",
    "random_uniform_scene",
    "ratio_lci_lai",
    "ratio_lci_pai",
    "run_oracle",
    "run_sweep",
    "run_theory",
    "run_trial",
    "snr_lai_theory",
    "snr_lci_bound",
    "snr_lci_theory",
    "snr_pai_theory",
    "sweep_csv",
    "theory_crossover_n",
    "to_db",
]
