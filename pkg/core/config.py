import os

from pydantic import BaseModel, field_validator

from dotenv import load_dotenv
from pydantic_settings import BaseSettings

load_dotenv(".env")

# App ENV variables
DEBUG = os.getenv("DEBUG", "False").lower() in ('true', '1')
LOG_JSON = os.getenv("LOG_JSON", "True").lower() in ('true', '1')

# Physics ENV variables
SPEED_OF_LIGHT = float(os.getenv("SPEED_OF_LIGHT", "3e8"))
KUTTRUFF_GAMMA_SQUARED = float(os.getenv("KUTTRUFF_GAMMA_SQUARED", "0.35"))
N_MIX = float(os.getenv("N_MIX", "1"))

# Enumeration ENV variables
MAX_MIRROR_INDICES = int(os.getenv("MAX_MIRROR_INDICES", 5_000_000))
PATH_CHUNK = int(os.getenv("PATH_CHUNK", 512))

# Monte Carlo ENV variables
MC_RUNS = int(os.getenv("MC_RUNS", 2000))
MC_WORKERS = int(os.getenv("MC_WORKERS", 1))
MC_SEED = int(os.getenv("MC_SEED", 0))


class RunConfig(BaseModel):
    debug: bool = DEBUG
    log_json: bool = LOG_JSON


class PhysicsConfig(BaseModel):
    speed_of_light: float = SPEED_OF_LIGHT
    gamma_squared: float = KUTTRUFF_GAMMA_SQUARED
    n_mix: float = N_MIX
    # warn when l_c exceeds this fraction of the smallest room dimension
    wavelength_ratio_warning: float = 0.1

    @field_validator('speed_of_light', 'n_mix')
    def validate_positive(cls, v):
        if v <= 0:
            raise ValueError("Must be positive")
        return v

    @field_validator('gamma_squared')
    def validate_non_negative(cls, v):
        if v < 0:
            raise ValueError("Must be non-negative")
        return v


class EnumerationConfig(BaseModel):
    max_indices: int = MAX_MIRROR_INDICES
    path_chunk: int = PATH_CHUNK

    @field_validator('max_indices', 'path_chunk')
    def validate_positive_int(cls, v):
        if v <= 0:
            raise ValueError("Must be a positive integer")
        return v


class SimulationConfig(BaseModel):
    runs: int = MC_RUNS
    workers: int = MC_WORKERS
    seed: int = MC_SEED

    curve_step: float = 0.25e-9
    curve_stop: float = 120e-9
    cutoff: float = 120e-9

    oversampling: int = 4
    pulse_padding: float = 20.0

    @field_validator('runs', 'workers', 'oversampling')
    def validate_positive_int(cls, v):
        if v <= 0:
            raise ValueError("Must be a positive integer")
        return v

    @field_validator('curve_step', 'curve_stop', 'cutoff', 'pulse_padding')
    def validate_positive(cls, v):
        if v <= 0:
            raise ValueError("Must be positive")
        return v


class Settings(BaseSettings):
    run: RunConfig = RunConfig()
    physics: PhysicsConfig = PhysicsConfig()
    enumeration: EnumerationConfig = EnumerationConfig()
    simulation: SimulationConfig = SimulationConfig()


settings = Settings()
