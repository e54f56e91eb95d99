"""Python bindings for the cbloch simulator.

Configs are YAML documents as written by ``cbloch preset NAME --config-only``.
"""

from ._core import (
    ConfigError,
    ModelParams,
    NumericalError,
    __version__,
    classify_regime,
    critical_frequency,
    drive_magnitude,
    predicted_drift_velocity,
    predictions,
    preset_configs,
    preset_names,
    rational_approx,
    run,
    simulate,
)

__all__ = [
    "ConfigError",
    "ModelParams",
    "NumericalError",
    "__version__",
    "classify_regime",
    "critical_frequency",
    "drive_magnitude",
    "predicted_drift_velocity",
    "predictions",
    "preset_configs",
    "preset_names",
    "rational_approx",
    "run",
    "simulate",
]
