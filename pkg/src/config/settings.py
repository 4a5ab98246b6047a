import os
from pathlib import Path
from typing import Dict, Any, Optional, List
from dotenv import load_dotenv
import yaml
from core.models import Normalization, RenderFormat


# Minimum sizes for the property suites to count as a full verification
ACCEPTANCE_MINIMA = {
    "max_pn": 30,
    "cascade_max": 50,
    "dictionary_max": 200,
    "big_l_max": 100,
    "parity_max": 1000,
    "regime_samples": 1000,
    "bound_samples": 1000,
    "transport_samples": 200,
    "ring_samples": 10000,
}

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _flag(value: str) -> bool:
    return value.strip().lower() in ("1", "true", "yes", "on")


class Settings:
    """Central configuration management"""

    def __init__(self, env_file: Optional[str] = None, config_file: Optional[str] = None):
        """Initialize settings from environment variables and config files"""
        if env_file:
            load_dotenv(env_file)
        else:
            load_dotenv()

        # Logging Settings
        self.log_level = os.getenv("SKEIN_LOG_LEVEL", "WARNING").upper()
        self.log_file = os.getenv("SKEIN_LOG_FILE") or None
        self.log_structured = _flag(os.getenv("SKEIN_LOG_STRUCTURED", "false"))

        # Output Settings
        self.output_format = RenderFormat(os.getenv("SKEIN_OUTPUT_FORMAT", "text"))
        self.normalization = Normalization(os.getenv("SKEIN_NORMALIZATION", "T0"))

        # Verification Settings
        self.verify_workers = int(os.getenv("SKEIN_VERIFY_WORKERS", "4"))
        self.random_seed = int(os.getenv("SKEIN_RANDOM_SEED", "1729"))
        fixtures = os.getenv("SKEIN_FIXTURES_FILE")
        self.fixtures_file = Path(fixtures) if fixtures else None

        # Property suite sizes
        self.max_pn = int(os.getenv("SKEIN_MAX_PN", "30"))
        self.cascade_max = int(os.getenv("SKEIN_CASCADE_MAX", "50"))
        self.dictionary_max = int(os.getenv("SKEIN_DICTIONARY_MAX", "200"))
        self.big_l_max = int(os.getenv("SKEIN_BIG_L_MAX", "100"))
        self.parity_max = int(os.getenv("SKEIN_PARITY_MAX", "1000"))
        self.regime_samples = int(os.getenv("SKEIN_REGIME_SAMPLES", "1000"))
        self.bound_samples = int(os.getenv("SKEIN_BOUND_SAMPLES", "1000"))
        self.transport_samples = int(os.getenv("SKEIN_TRANSPORT_SAMPLES", "200"))
        self.transport_max_thread = int(os.getenv("SKEIN_TRANSPORT_MAX_THREAD", "6"))
        self.ring_samples = int(os.getenv("SKEIN_RING_SAMPLES", "10000"))

        # Load additional config file
        self.config_file = Path(config_file or os.getenv("SKEIN_CONFIG_FILE", "config/verification.yaml"))
        self._apply_config_file()

    def _apply_config_file(self) -> None:
        """Overlay values from the YAML config file when it exists"""
        if not self.config_file.exists():
            return
        with open(self.config_file) as f:
            custom_config = yaml.safe_load(f) or {}

        for key, value in custom_config.items():
            if key in ACCEPTANCE_MINIMA or key in ("verify_workers", "random_seed", "transport_max_thread"):
                setattr(self, key, int(value))
            elif key == "fixtures_file":
                self.fixtures_file = Path(value)
            elif key == "output_format":
                self.output_format = RenderFormat(value)
            elif key == "normalization":
                self.normalization = Normalization(value)
            elif key == "log_level":
                self.log_level = str(value).upper()

    def suite_sizes(self) -> Dict[str, int]:
        return {key: getattr(self, key) for key in ACCEPTANCE_MINIMA}

    def override(self, **values: Any) -> "Settings":
        """Apply per-invocation values that are not None"""
        for key, value in values.items():
            if value is not None:
                setattr(self, key, value)
        return self

    def validate(self) -> List[str]:
        """Validate configuration and return list of warnings/errors"""
        issues = []

        if self.log_level not in LOG_LEVELS:
            issues.append(f"ERROR: Unknown log level {self.log_level}")

        if self.verify_workers < 1:
            issues.append("ERROR: verify_workers must be at least 1")

        if self.fixtures_file and not self.fixtures_file.exists():
            issues.append(f"ERROR: Fixtures file {self.fixtures_file} does not exist.")

        if self.log_file and not Path(self.log_file).parent.exists():
            issues.append(f"WARNING: Parent directory of log file {self.log_file} does not exist.")

        for key, minimum in ACCEPTANCE_MINIMA.items():
            if getattr(self, key) < minimum:
                issues.append(f"WARNING: {key} = {getattr(self, key)} is below the acceptance size {minimum}")

        if not 1 <= self.transport_max_thread <= 12:
            issues.append("WARNING: transport_max_thread outside 1..12 makes transport checks trivial or slow")

        if self.verify_workers > 16:
            issues.append("WARNING: verify_workers > 16 adds threads without speeding up CPU-bound suites")

        return issues


# Global settings instance
settings = Settings()
