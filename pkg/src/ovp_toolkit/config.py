"""Runtime configuration shared by the HTTP service and the CLI."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .llm import BackendConfig


@dataclass
class AppConfig:
    chat_backend: str = "mock"  # mock | live
    chat: BackendConfig = field(default_factory=BackendConfig)
    embeddings_backend: str = "mock"  # mock | live | none
    embeddings: BackendConfig = field(
        default_factory=lambda: BackendConfig(model_name="all-MiniLM-L6-v2")
    )
    history_path: str = "translations.jsonl"
    listen_host: str = "127.0.0.1"
    listen_port: int = 8000
    cors_origins: list[str] = field(default_factory=list)
    continuous_past: bool = False

    def __post_init__(self) -> None:
        if self.chat_backend not in ("mock", "live"):
            raise ValueError(f"bad chat_backend {self.chat_backend!r}")
        if self.embeddings_backend not in ("mock", "live", "none"):
            raise ValueError(f"bad embeddings_backend {self.embeddings_backend!r}")

    @classmethod
    def from_file(cls, path) -> "AppConfig":
        data = json.loads(Path(path).read_text("utf-8"))
        kwargs = dict(data)
        if "chat" in kwargs:
            kwargs["chat"] = BackendConfig(**kwargs["chat"])
        if "embeddings" in kwargs:
            kwargs["embeddings"] = BackendConfig(**kwargs["embeddings"])
        return cls(**kwargs)


def make_chat_backend(config: AppConfig):
    from .llm import HttpChatBackend, MockChatBackend

    if config.chat_backend == "live":
        return HttpChatBackend(config.chat)
    return MockChatBackend()


def make_embeddings_backend(config: AppConfig) -> Optional[object]:
    from .evalharness import HttpEmbeddingsBackend, MockEmbeddingsBackend

    if config.embeddings_backend == "live":
        return HttpEmbeddingsBackend(config.embeddings)
    if config.embeddings_backend == "mock":
        return MockEmbeddingsBackend()
    return None
