"""Application settings and chat model construction."""

import os
from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict

from trustgame.exceptions import NoCredentialsError
from trustgame.models.harness import BackendConfig


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    openai_api_key: str | None = None
    mistral_api_key: str | None = None
    logfire_token: str | None = None

    # Experiment execution
    parallelism: int = 4
    output_dir: str = "runs"
    transcript_file: str = "transcripts.jsonl"

    # Gates the live backend smoke test
    live_smoke: bool = False


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


def resolve_api_key(env_var: str) -> str:
    """Look up a credential by environment variable name.

    pydantic-settings loads .env into Settings without exporting it to os.environ, so
    known keys are read from settings first and anything else from the environment.

    Raises:
        NoCredentialsError: If the variable is unset or empty.
    """
    field = env_var.lower()
    value = getattr(get_settings(), field, None) if field in Settings.model_fields else None
    value = value or os.environ.get(env_var)
    if not value:
        raise NoCredentialsError(env_var)
    return value


def create_chat_model(config: BackendConfig):
    """Create a chat-completion model for an HTTP backend.

    OpenAI and Mistral both speak the OpenAI-compatible protocol; ``base_url`` points at
    the provider or at a self-hosted gateway.
    """
    from pydantic_ai.models.openai import OpenAIModel
    from pydantic_ai.providers.openai import OpenAIProvider

    provider = OpenAIProvider(base_url=config.base_url, api_key=resolve_api_key(config.api_key_env))
    return OpenAIModel(config.model, provider=provider)
