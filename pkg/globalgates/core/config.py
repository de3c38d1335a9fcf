from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    APP_NAME: str = "globalgates"
    APP_VERSION: str = "1.0.0"

    LOG_LEVEL: str = "INFO"
    # Empty disables the log file.
    LOG_DIR: str = "logs"

    EQUALITY_TOLERANCE: float = 1e-10
    UNITARITY_TOLERANCE: float = 1e-12

    SYNTH_RESTARTS: int = 200
    SYNTH_TOLERANCE: float = 1e-6
    SYNTH_SEED: int = 42
    SYNTH_WORKERS: int = 1
    SYNTH_BATCH_SIZE: int = 16

    OPTIMIZER_MAX_ITERATIONS: int = 500
    OPTIMIZER_GTOL: float = 1e-10

    FOCK_STEPS_PER_PERIOD: int = 1000
    UNEQUAL_COUPLING_TOLERANCE: float = 5e-3

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="GLOBALGATES_",
        extra="ignore",
    )


def get_settings() -> Settings:
    return Settings()
