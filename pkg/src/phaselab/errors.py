"""Exception hierarchy shared by every phaselab module.

Each class carries a short machine-readable ``code`` which the command-line
front end copies into its error JSON.
"""


class PhaselabError(Exception):
    code = "phaselab-error"


class DimensionError(PhaselabError, ValueError):
    code = "dimension-error"


class ParameterError(PhaselabError, ValueError):
    code = "parameter-error"


class WindowSupportError(PhaselabError, ValueError):
    code = "window-support-error"


class HypothesisError(PhaselabError):
    """A stability theorem was asked to certify an instance outside its hypotheses."""

    code = "hypothesis-failure"
