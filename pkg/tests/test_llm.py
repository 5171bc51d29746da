import json

import httpx
import pytest

from ovp_toolkit import llm
from ovp_toolkit.llm import (
    BackendConfig,
    BackendError,
    ChatMessage,
    FormatError,
    HttpChatBackend,
    MockChatBackend,
    RENDER_TEMPLATE,
    SEGMENT_TEMPLATE,
    TransportError,
    complete_structured,
)


def test_message_validation():
    with pytest.raises(ValueError):
        ChatMessage("narrator", "hi")
    with pytest.raises(ValueError):
        ChatMessage("user", "")


def test_template_message_order():
    messages = RENDER_TEMPLATE.messages("payload")
    assert messages[0].role == "system"
    assert [m.role for m in messages[1:-1]] == ["user", "assistant"] * 2
    assert messages[-1] == ChatMessage("user", "payload")


def test_backend_config_validation():
    with pytest.raises(ValueError):
        BackendConfig(timeout=0)
    with pytest.raises(ValueError):
        BackendConfig(max_retries=-1)


class TestMockBackend:
    def test_deterministic(self, mock_chat):
        messages = SEGMENT_TEMPLATE.messages("The dog chased the cat.")
        assert mock_chat.complete(messages) == mock_chat.complete(messages)

    def test_few_shot_echo(self, mock_chat):
        for template in (RENDER_TEMPLATE, SEGMENT_TEMPLATE):
            for shot_user, shot_assistant in template.few_shots:
                assert mock_chat.complete(template.messages(shot_user)) == shot_assistant

    def test_canned_transcript_wins(self):
        backend = MockChatBackend(canned={"ping": "pong"})
        assert backend.complete(RENDER_TEMPLATE.messages("ping")) == "pong"

    def test_unknown_template_rejected(self, mock_chat):
        with pytest.raises(ValueError):
            mock_chat.complete([ChatMessage("system", "something else"), ChatMessage("user", "x")])

    def test_requires_system_first(self, mock_chat):
        with pytest.raises(ValueError):
            mock_chat.complete([ChatMessage("user", "x")])


def test_prompts_never_contain_target_language_surfaces(lexicon, mock_chat):
    """The model must only ever see structured English, never OVP stems."""
    from ovp_toolkit import builder, ovp2en

    surfaces = {s for s in lexicon.surfaces() if len(s) >= 3}
    for seed in range(50):
        selections = builder.random_sentence(lexicon, seed)
        structured = ovp2en.encode(selections)
        content = structured.to_prompt_content().lower()
        for surface in surfaces:
            assert surface.lower() not in content, (surface, content)
    # template few-shots too
    for template in (RENDER_TEMPLATE, SEGMENT_TEMPLATE):
        for shot_user, shot_assistant in template.few_shots:
            for surface in surfaces:
                assert surface.lower() not in shot_user.lower()


class TestHttpBackend:
    def _backend(self, transport_results, sleeps):
        backend = HttpChatBackend(
            BackendConfig(base_url="http://test", max_retries=2),
            _sleep=sleeps.append,
        )
        calls = iter(transport_results)

        def fake_post(url, json=None, headers=None, timeout=None):
            result = next(calls)
            if isinstance(result, Exception):
                raise result
            return result
        return backend, fake_post

    def test_retries_transport_errors_with_backoff(self, monkeypatch):
        sleeps = []
        ok = httpx.Response(
            200,
            json={"choices": [{"message": {"content": "hello"}}]},
            request=httpx.Request("POST", "http://test"),
        )
        backend, fake_post = self._backend(
            [httpx.ConnectError("boom"), httpx.ReadTimeout("slow"), ok], sleeps
        )
        monkeypatch.setattr(llm.httpx, "post", fake_post)
        out = backend.complete(RENDER_TEMPLATE.messages("x"))
        assert out == "hello"
        assert sleeps == [0.5, 1.0]

    def test_retries_exhausted_raises_transport_error(self, monkeypatch):
        sleeps = []
        backend, fake_post = self._backend([httpx.ConnectError("boom")] * 3, sleeps)
        monkeypatch.setattr(llm.httpx, "post", fake_post)
        with pytest.raises(TransportError):
            backend.complete(RENDER_TEMPLATE.messages("x"))
        assert len(sleeps) == 2

    def test_retries_5xx_then_fails_with_backend_error(self, monkeypatch):
        sleeps = []
        err = httpx.Response(
            503, text="down", request=httpx.Request("POST", "http://test")
        )
        backend, fake_post = self._backend([err] * 3, sleeps)
        monkeypatch.setattr(llm.httpx, "post", fake_post)
        with pytest.raises(BackendError) as exc_info:
            backend.complete(RENDER_TEMPLATE.messages("x"))
        assert exc_info.value.status == 503

    def test_4xx_fails_immediately(self, monkeypatch):
        sleeps = []
        err = httpx.Response(
            401, text="no key", request=httpx.Request("POST", "http://test")
        )
        backend, fake_post = self._backend([err], sleeps)
        monkeypatch.setattr(llm.httpx, "post", fake_post)
        with pytest.raises(BackendError):
            backend.complete(RENDER_TEMPLATE.messages("x"))
        assert sleeps == []

    def test_api_key_header_from_env(self, monkeypatch):
        seen = {}

        def fake_post(url, json=None, headers=None, timeout=None):
            seen["headers"] = headers
            return httpx.Response(
                200,
                json={"choices": [{"message": {"content": "y"}}]},
                request=httpx.Request("POST", url),
            )

        monkeypatch.setattr(llm.httpx, "post", fake_post)
        monkeypatch.setenv("OPENAI_API_KEY", "sk-test")
        HttpChatBackend().complete(RENDER_TEMPLATE.messages("x"))
        assert seen["headers"]["Authorization"] == "Bearer sk-test"


SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "properties": {"a": {"type": "string"}},
        "required": ["a"],
    },
}


class ScriptedBackend:
    def __init__(self, replies):
        self.replies = list(replies)
        self.calls = 0

    def complete(self, messages):
        self.calls += 1
        return self.replies.pop(0)


class TestCompleteStructured:
    def test_parses_clean_json(self):
        backend = ScriptedBackend([json.dumps([{"a": "x"}])])
        out = complete_structured(backend, RENDER_TEMPLATE.messages("x"), SCHEMA)
        assert out == [{"a": "x"}]

    def test_extracts_json_from_prose(self):
        backend = ScriptedBackend(['Sure! Here you go: [{"a": "x"}] Enjoy.'])
        out = complete_structured(backend, RENDER_TEMPLATE.messages("x"), SCHEMA)
        assert out == [{"a": "x"}]

    def test_prunes_unknown_fields(self):
        backend = ScriptedBackend([json.dumps([{"a": "x", "note": "extra"}])])
        out = complete_structured(backend, RENDER_TEMPLATE.messages("x"), SCHEMA)
        assert out == [{"a": "x"}]

    def test_repair_reprompt_then_success(self):
        backend = ScriptedBackend(["not json at all", json.dumps([{"a": "x"}])])
        out = complete_structured(backend, RENDER_TEMPLATE.messages("x"), SCHEMA)
        assert out == [{"a": "x"}]
        assert backend.calls == 2

    def test_repair_fails_raises_format_error(self):
        backend = ScriptedBackend(["nope", "still nope"])
        with pytest.raises(FormatError) as exc_info:
            complete_structured(backend, RENDER_TEMPLATE.messages("x"), SCHEMA)
        assert exc_info.value.raw == "still nope"
