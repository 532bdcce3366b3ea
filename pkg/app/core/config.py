from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings

# Load environment variables, override=True ensures existing environment variables are overwritten
load_dotenv(override=True)

PACKAGE_DIR = Path(__file__).resolve().parent.parent


class Settings(BaseSettings):
    """Application configuration class"""

    # Application configuration
    APP_NAME: str = "superfast-qft"
    DEBUG: bool = False

    # Log configuration
    LOG_LEVEL: str = "INFO"
    LOG_FILE: str = "logs/app.log"
    LOG_CONFIG: Optional[str] = "logging_config.json"

    # Size caps
    DENSE_MAX_QUBITS: int = Field(14, description="Largest n for dense 2^n x 2^n matrices")
    DENSE_MPO_MAX_QUBITS: int = Field(12, description="Largest n for mpo_to_dense")
    DECODE_MAX_QUBITS: int = Field(26, description="Largest n for decoding an Mps")
    SAMPLING_MAX_QUBITS: int = Field(20, description="Largest n for sampled encoders")
    VERIFY_MAX_QUBITS: int = 10

    # Numerics
    DEFAULT_SEED: int = 20240229
    DEFAULT_CHI: int = 16
    DEFAULT_CUTOFF: float = 1e-10
    ZIPUP_RELAX_CUTOFF: float = Field(10.0, description="Divides the cutoff on the zip-up pass")
    ZIPUP_RELAX_CHI: int = Field(2, description="Multiplies max_chi on the zip-up pass")
    TIE_TOLERANCE: float = 1e-14
    SVD_ZERO_TOLERANCE: float = Field(1e-15, description="Normalized singular values at or below this count as zero")
    PHASE_FLUSH_DISTANCE: int = Field(52, description="Controlled phases beyond this distance are dropped")
    QR_ASPECT_RATIO: float = Field(4.0, description="Side ratio above which singular_values reduces by QR first")
    SVD_MAX_ATTEMPTS: int = 3

    # Benchmark configuration
    TIMING_REPEATS: int = 5
    BENCHMARK_FUNCTIONS_FILE: str = str(PACKAGE_DIR / "functions" / "benchmark_functions.yaml")

    class Config:
        env_file = ".env"
        case_sensitive = True


# Create global configuration instance
settings = Settings()
