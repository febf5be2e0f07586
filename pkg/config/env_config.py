from pydantic_settings import BaseSettings, SettingsConfigDict

# names here must match the keys in .env exactly


class Settings(BaseSettings):

    APP_NAME: str = "Bessel Operator Domain Lab"
    APP_VERSION: str = "1.0.0"
    LOG_LEVEL: str = "INFO"
    LOG_DIR: str = "logs"
    CONFIG_PATH: str = ""

    # .env must not contain spaces around '='
    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )


def get_settings():
    return Settings()
