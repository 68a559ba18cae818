"""Exception hierarchy shared across the toolkit."""


class PorolabError(Exception):
    """Base class for every toolkit-specific error."""


class ConfigError(PorolabError):
    """Invalid run configuration (bad flag value, malformed family JSON)."""


class UnknownPreset(ConfigError):
    """A preset name did not resolve; never silently defaulted."""


class PrefixTooShort(PorolabError):
    """A word was too short to anchor the requested cylinder depth."""


class WindowExceedsHorizon(PorolabError):
    """A sliding window was wider than the described data window."""


class DepthTooLarge(PorolabError):
    """A requested enumeration would exceed the word budget."""


class BudgetExceeded(PorolabError):
    """An exhaustive search ran past its leaf-visit budget."""


class NoValidCutPoints(PorolabError):
    """No cut pair satisfied the stage conditions within the search horizon."""


class HoleNotFound(PorolabError):
    """A hole-search adversary found no empty cylinder within its budget."""


class AdversaryBudgetViolation(PorolabError):
    """An adversary's word broke its declared length or agreement budget."""


class AdversaryLeftP(PorolabError):
    """An adversary's word placed a one outside the allowed support region."""
