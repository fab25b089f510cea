"""Verification scenarios, sweeps and the command line interface."""

from .scenarios import Report, run_scenario, scenario_names
from .sweep import sweep

__all__ = ["Report", "run_scenario", "scenario_names", "sweep"]
