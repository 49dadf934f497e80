"""Resource adequacy risk engine and capacity procurement decision support.

Core layers:

* :mod:`adequacy.fleet` -- conventional fleet model (capacity distribution,
  two-state Markov availability simulation)
* :mod:`adequacy.weather` -- demand / wind-CF weather years, scenarios,
  synthetic data
* :mod:`adequacy.indices` -- analytic LOLE/EEU hindcast indices
* :mod:`adequacy.sequential` -- Monte Carlo outcome distributions
* :mod:`adequacy.metrics` -- empirical distributions, VaR/CVaR
* :mod:`adequacy.procurement` -- EEU calibration and CONE/VOLL optimization
* :mod:`adequacy.cli` / :mod:`adequacy.service` -- batch and HTTP entry points
"""

from .errors import (
    BoundarySolutionError,
    CalibrationInfeasibleError,
    DataFormatError,
    EmptyDistributionError,
    ValidationError,
)
from .fleet import (
    CapacityDistribution,
    Fleet,
    GeneratingUnit,
    build_capacity_distribution,
    load_fleet,
    save_fleet,
    simulate_fleet_capacity,
    simulate_unit_trajectory,
    unit_transition_rates,
)
from .indices import (
    RiskIndices,
    epu,
    eeu_year,
    leave_one_out_indices,
    lole_year,
    lolp,
    risk_indices,
    year_contributions,
)
from .metrics import (
    EmpiricalDistribution,
    cvar_alpha,
    cvar_curve,
    histogram,
    summary,
    var_alpha,
)
from .procurement import (
    CalibrationResult,
    ProcurementProblem,
    ProcurementSolution,
    RiskCurves,
    calibrate_to_target_eeu,
    eeu_of_shift,
    lole_of_shift,
    optimize_procurement,
    voll_sensitivity_sweep,
)
from .sequential import (
    ReplicationOutcome,
    SimulationOutcome,
    eu_distribution,
    eu_within_day_distribution,
    lold_distribution,
    shortfall_days_distribution,
    simulate,
)
from .weather import (
    HistoricYear,
    ScenarioConfig,
    WeatherDataset,
    generate_synthetic_dataset,
    load_dataset,
    net_demand,
    rescale_demand,
    save_dataset,
    wind_available_capacity,
)

__version__ = "0.1.0"
