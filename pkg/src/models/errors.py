class ParameterRegionError(ValueError):
    """A coupling parameter lies outside the region an operation is defined on."""


class IllConditionedFitError(ValueError):
    """A least-squares window cannot separate its basis functions."""
