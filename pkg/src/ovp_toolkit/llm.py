"""Chat-completion abstraction: prompt templates, an HTTP backend speaking
the de-facto standard chat schema, and a deterministic offline mock.

The hard rule enforced here (and asserted in tests) is that no target-
language surface form is ever placed in an outgoing prompt; the model only
ever sees structured English.
"""
from __future__ import annotations

import json
import os
import re
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Protocol

import httpx
import jsonschema

from . import english


class TransportError(RuntimeError):
    """Network-level failure that survived all retries."""


class BackendError(RuntimeError):
    """Non-success HTTP status from the completion backend."""

    def __init__(self, status: int, body_excerpt: str):
        super().__init__(f"backend returned status {status}: {body_excerpt}")
        self.status = status
        self.body_excerpt = body_excerpt


class FormatError(ValueError):
    """Model output could not be parsed even after a repair re-prompt."""

    def __init__(self, message: str, raw: str):
        super().__init__(message)
        self.raw = raw


@dataclass(frozen=True)
class ChatMessage:
    role: str  # system | user | assistant
    content: str

    def __post_init__(self) -> None:
        if self.role not in ("system", "user", "assistant"):
            raise ValueError(f"bad role {self.role!r}")
        if not self.content:
            raise ValueError("empty message content")


@dataclass(frozen=True)
class PromptTemplate:
    name: str
    system: str
    few_shots: tuple[tuple[str, str], ...]

    def messages(self, user_content: str) -> list[ChatMessage]:
        out = [ChatMessage("system", self.system)]
        for shot_user, shot_assistant in self.few_shots:
            out.append(ChatMessage("user", shot_user))
            out.append(ChatMessage("assistant", shot_assistant))
        out.append(ChatMessage("user", user_content))
        return out


@dataclass(frozen=True)
class BackendConfig:
    base_url: str = "https://api.openai.com/v1"
    model_name: str = "gpt-3.5-turbo"
    api_key_source: str = "OPENAI_API_KEY"
    timeout: float = 30.0
    max_retries: int = 3

    def __post_init__(self) -> None:
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if self.max_retries < 0:
            raise ValueError("max_retries must be non-negative")


def _structured_user_content(parts: list[dict]) -> str:
    return json.dumps(parts, ensure_ascii=False)


def _shot(parts: list[dict], reply: str) -> tuple[str, str]:
    return _structured_user_content(parts), reply


RENDER_TEMPLATE = PromptTemplate(
    name="render-english",
    system=(
        "You are an assistant for translating structured sentences into "
        "simple natural English sentences."
    ),
    few_shots=(
        _shot(
            [
                {"part_of_speech": "subject", "positional": "proximal", "word": "wood"},
                {"part_of_speech": "object", "positional": "proximal", "word": "dog"},
                {
                    "part_of_speech": "verb",
                    "tense": "present continuous (-ing)",
                    "word": "see",
                },
            ],
            "This wood is seeing this dog.",
        ),
        _shot(
            [
                {"part_of_speech": "subject", "positional": "distal", "word": "pinenuts"},
                {"part_of_speech": "object", "positional": "distal", "word": "horse"},
                {"part_of_speech": "verb", "tense": "future (will)", "word": "see"},
            ],
            "Those pinenuts will see that horse.",
        ),
    ),
)

SEGMENT_TEMPLATE = PromptTemplate(
    name="segment",
    system=(
        "You are an assistant that splits user input sentences into a set of "
        "simple SVO or SV sentences. The set of simple sentences should be as "
        "semantically equivalent as possible to the user input sentence. No "
        "adjectives, adverbs, prepositions, or conjunctions should be added "
        "to the simple sentences. Indirect objects and objects of "
        "prepositions should not be included in the simple sentences."
    ),
    few_shots=(
        (
            "I am sitting in a chair.",
            json.dumps(
                [
                    {
                        "subject": "I",
                        "verb": "sit",
                        "verb_tense": "present_continuous",
                        "object": None,
                    }
                ]
            ),
        ),
        (
            "I saw two men walking their dogs yesterday at Starbucks while "
            "drinking a cup of coffee",
            json.dumps(
                [
                    {"subject": "I", "verb": "see", "verb_tense": "past", "object": "man"},
                    {
                        "subject": "man",
                        "verb": "walk",
                        "verb_tense": "past_continuous",
                        "object": "dog",
                    },
                    {
                        "subject": "man",
                        "verb": "drink",
                        "verb_tense": "past_continuous",
                        "object": "coffee",
                    },
                ]
            ),
        ),
    ),
)

TEMPLATES = {t.name: t for t in (RENDER_TEMPLATE, SEGMENT_TEMPLATE)}


class ChatBackend(Protocol):
    def complete(self, messages: list[ChatMessage]) -> str: ...


@dataclass
class HttpChatBackend:
    """Chat backend over HTTP using the standard messages/model JSON body."""

    config: BackendConfig = field(default_factory=BackendConfig)
    temperature: float = 0.0
    _sleep: Callable[[float], None] = time.sleep

    def complete(self, messages: list[ChatMessage]) -> str:
        if not messages or messages[0].role != "system":
            raise ValueError("messages must start with a system message")
        body = {
            "model": self.config.model_name,
            "messages": [{"role": m.role, "content": m.content} for m in messages],
            "temperature": self.temperature,
        }
        headers = {}
        api_key = os.environ.get(self.config.api_key_source, "")
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        url = self.config.base_url.rstrip("/") + "/chat/completions"
        last_exc: Optional[Exception] = None
        for attempt in range(self.config.max_retries + 1):
            try:
                resp = httpx.post(
                    url, json=body, headers=headers, timeout=self.config.timeout
                )
            except httpx.HTTPError as exc:
                last_exc = exc
                if attempt < self.config.max_retries:
                    self._sleep(min(0.5 * 2**attempt, 8.0))
                continue
            if resp.status_code in (429,) or resp.status_code >= 500:
                last_exc = BackendError(resp.status_code, resp.text[:200])
                if attempt < self.config.max_retries:
                    self._sleep(min(0.5 * 2**attempt, 8.0))
                continue
            if resp.status_code != 200:
                raise BackendError(resp.status_code, resp.text[:200])
            return resp.json()["choices"][0]["message"]["content"]
        if isinstance(last_exc, BackendError):
            raise last_exc
        raise TransportError(f"request failed after retries: {last_exc}")


@dataclass
class MockChatBackend:
    """Offline backend: a pure function of (template, final user message).

    Few-shot inputs echo their canned replies; other inputs go through the
    deterministic renderer/segmenter.  ``canned`` lets tests pin extra
    transcript pairs keyed on the final user message.
    """

    canned: dict[str, str] = field(default_factory=dict)
    model_name: str = "mock"

    def complete(self, messages: list[ChatMessage]) -> str:
        if not messages or messages[0].role != "system":
            raise ValueError("messages must start with a system message")
        user_content = messages[-1].content
        if user_content in self.canned:
            return self.canned[user_content]
        template = next(
            (t for t in TEMPLATES.values() if t.system == messages[0].content), None
        )
        if template is not None:
            for shot_user, shot_assistant in template.few_shots:
                if shot_user == user_content:
                    return shot_assistant
        if template is RENDER_TEMPLATE:
            return english.render_structured(json.loads(user_content))
        if template is SEGMENT_TEMPLATE:
            return json.dumps(english.naive_segment(user_content))
        raise ValueError("mock backend received an unknown prompt template")


def complete(backend: ChatBackend, messages: list[ChatMessage]) -> str:
    if not messages or messages[0].role != "system":
        raise ValueError("messages must start with a system message")
    return backend.complete(messages)


_REPAIR_PROMPT = (
    "Your previous reply could not be parsed as JSON matching the expected "
    "format. Reply again with only the JSON value, no prose."
)


def _extract_json(text: str):
    text = text.strip()
    if not text:
        raise ValueError("empty reply")
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        pass
    match = re.search(r"\[.*\]|\{.*\}", text, re.DOTALL)
    if not match:
        raise ValueError("no JSON value found in reply")
    return json.loads(match.group(0))


def _prune_unknown(value, schema):
    """Tolerant reader: drop fields the schema does not describe."""
    if isinstance(value, dict) and schema.get("type") == "object":
        props = schema.get("properties", {})
        return {
            k: _prune_unknown(v, props[k]) for k, v in value.items() if k in props
        }
    if isinstance(value, list) and schema.get("type") == "array":
        items = schema.get("items", {})
        return [_prune_unknown(v, items) for v in value]
    return value


def complete_structured(backend: ChatBackend, messages: list[ChatMessage], schema: dict):
    """Completion parsed against a JSON schema, with one repair re-prompt."""
    raw = complete(backend, messages)
    for attempt in (0, 1):
        try:
            value = _prune_unknown(_extract_json(raw), schema)
            jsonschema.validate(value, schema)
            return value
        except (ValueError, jsonschema.ValidationError) as exc:
            if attempt == 1:
                raise FormatError(f"unparseable structured reply: {exc}", raw) from exc
            repair = messages + [
                ChatMessage("assistant", raw or "(empty)"),
                ChatMessage("user", _REPAIR_PROMPT),
            ]
            raw = complete(backend, repair)
