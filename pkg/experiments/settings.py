"""
Settings module - environment-driven defaults, loaded from a .env file when present.
"""
import os
from dataclasses import dataclass

from dotenv import load_dotenv


def _flag(value):
    return str(value).strip().lower() in ("1", "true", "yes", "on")


@dataclass
class Settings:
    output_dir: str = "outputs"
    workers: int = 1
    reproducible: bool = True
    verbose: bool = True

    @classmethod
    def from_env(cls):
        """
        Read NKVAE_OUTPUT_DIR, NKVAE_WORKERS, NKVAE_REPRODUCIBLE and NKVAE_VERBOSE

        Returns:
        - Settings
        """
        load_dotenv()
        workers = int(os.getenv("NKVAE_WORKERS", "1"))
        if workers < 1:
            raise ValueError("❌ NKVAE_WORKERS must be at least 1. Please check your .env file.")
        return cls(
            output_dir=os.getenv("NKVAE_OUTPUT_DIR", "outputs"),
            workers=workers,
            reproducible=_flag(os.getenv("NKVAE_REPRODUCIBLE", "true")),
            verbose=_flag(os.getenv("NKVAE_VERBOSE", "true")),
        )
