"""Channel estimation for RIS-aided MISO uplinks."""

from ._core import (
    ConfigError,
    __version__,
    closed_form_curves,
    dft_pattern,
    kron,
    mmse,
    monte_carlo_sweep,
    mvu_dft,
    mvu_onoff,
    onoff_pattern,
    predict_nmse,
    resolve_config,
    validate_pattern,
)

__all__ = [
    "ConfigError",
    "__version__",
    "closed_form_curves",
    "dft_pattern",
    "kron",
    "mmse",
    "monte_carlo_sweep",
    "mvu_dft",
    "mvu_onoff",
    "onoff_pattern",
    "predict_nmse",
    "resolve_config",
    "validate_pattern",
]
