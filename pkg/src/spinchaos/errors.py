"""Exception types shared across the package.

The command line maps these onto exit codes: configuration problems exit
with 2, numerical/statistical failures with 3.  Contract violations on
function inputs (non-normalized states, asymmetric matrices, ...) raise
plain ``ValueError``.
"""


class ConfigError(Exception):
    """Invalid geometry, parameters, or run configuration."""


class NumericalError(Exception):
    """A numerical kernel failed to deliver its contract."""


class StatisticsError(Exception):
    """Not enough data for the requested statistic."""
