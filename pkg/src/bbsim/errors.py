"""Exception types shared across the simulator."""


class ConfigurationError(ValueError):
    """Invalid configuration (bad dimensions, infeasible slot counts, bad grids)."""


class UsageError(ValueError):
    """API misuse: empty observation lists, slot-count mismatches, etc."""
