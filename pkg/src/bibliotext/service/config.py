"""Service configuration from environment variables."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

ENV_PREFIX = "BIBLIOTEXT_"


@dataclass(frozen=True)
class ServiceConfig:
    data_dir: Path = field(default_factory=lambda: Path("bibliotext_data"))
    port: int = 8000
    workers: int = field(default_factory=lambda: os.cpu_count() or 2)
    upload_limit_bytes: int = 50 * 1024 * 1024
    cors_origin: str = "*"

    @classmethod
    def from_env(cls, env: dict[str, str] | None = None) -> "ServiceConfig":
        env = dict(os.environ if env is None else env)

        def get(name: str, default):
            return env.get(ENV_PREFIX + name, default)

        return cls(
            data_dir=Path(get("DATA_DIR", "bibliotext_data")),
            port=int(get("PORT", 8000)),
            workers=int(get("WORKERS", os.cpu_count() or 2)),
            upload_limit_bytes=int(get("UPLOAD_LIMIT", 50 * 1024 * 1024)),
            cors_origin=str(get("CORS_ORIGIN", "*")),
        )
