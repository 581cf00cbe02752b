"""Exception hierarchy for trustgame."""


class TrustgameError(Exception):
    """Base exception for all trustgame errors."""


class ParamsError(TrustgameError):
    """Game or dynamics parameters violate their invariants."""


class PromptTemplateError(TrustgameError):
    """Prompt template could not be rendered."""


class ParseError(TrustgameError):
    """Failed to extract an action from a backend reply."""

    def __init__(self, message: str, raw_reply: str = "") -> None:
        self.raw_reply = raw_reply
        super().__init__(message)


class ParseAmbiguousError(ParseError):
    """Reply names more than one action."""


class ParseEmptyError(ParseError):
    """Reply names no action at all."""


class BackendError(TrustgameError):
    """Backend failed to produce a reply."""


class BackendExhaustedError(BackendError):
    """Retries and backoff were spent without a reply."""


class NoCredentialsError(BackendError):
    """Credential environment variable for a backend is not set."""

    def __init__(self, env_var: str) -> None:
        self.env_var = env_var
        super().__init__(f"No credentials configured. Set the {env_var} environment variable.")


class StationaryDistributionError(TrustgameError):
    """Stationary distribution did not reach the required residual."""


class ConfigError(TrustgameError):
    """Experiment configuration is unreadable or invalid."""


class AggregationError(TrustgameError):
    """Transcripts cannot be aggregated together."""


class ReportError(TrustgameError):
    """Failed to emit a report."""


class TranscriptError(TrustgameError):
    """Persisted transcripts are unreadable or inconsistent."""
