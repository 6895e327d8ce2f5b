from ._core import (
    InputError,
    analytic_value,
    case_value,
    cases,
    critical_compression,
    critical_tension,
    export_case,
    fresnel,
    trace,
)

__all__ = [
    "InputError",
    "analytic_value",
    "case_value",
    "cases",
    "critical_compression",
    "critical_tension",
    "export_case",
    "fresnel",
    "trace",
]
