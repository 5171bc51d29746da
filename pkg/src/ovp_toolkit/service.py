"""HTTP service: builder options, both translation pipelines, random
generation, and an append-only translation history backing the web UI."""
from __future__ import annotations

import logging
import os
import threading
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from . import builder, en2ovp, evalharness, llm, ovp2en
from .config import AppConfig, make_chat_backend, make_embeddings_backend
from .en2ovp import TranslationRecord
from .grammar import (
    CORPUS_POLICY,
    PIPELINE_POLICY,
    SLOTS,
    SentenceSelections,
    render,
    selections_from_ids,
    validate,
)
from .lexicon import Lexeme, Lexicon, load_lexicon

log = logging.getLogger(__name__)


class HistoryStore:
    """Append-only line-delimited store of translation records.

    Appends are serialized through a lock and fsynced before returning, so
    a record acknowledged to a client is never lost. Corrupted lines are
    skipped with a warning on read.
    """

    def __init__(self, path):
        self.path = Path(path)
        self._lock = threading.Lock()

    def append(self, record: TranslationRecord) -> None:
        line = record.to_json() + "\n"
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(line)
                fh.flush()
                os.fsync(fh.fileno())

    def load(self) -> list[TranslationRecord]:
        if not self.path.exists():
            return []
        records: list[TranslationRecord] = []
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    import json

                    records.append(TranslationRecord.from_dict(json.loads(line)))
                except (ValueError, KeyError) as exc:
                    log.warning(
                        "skipping corrupt history line %s:%d: %s",
                        self.path,
                        lineno,
                        exc,
                    )
        return records


def _lexeme_out(lexeme: Lexeme) -> dict:
    out = {
        "id": lexeme.id,
        "surface": lexeme.surface,
        "gloss": lexeme.gloss,
        "category": lexeme.category,
    }
    if lexeme.proximity is not None:
        out["proximity"] = lexeme.proximity
    if lexeme.plurality is not None:
        out["plurality"] = lexeme.plurality
    return out


def _parse_selections(lexicon: Lexicon, ids: dict) -> SentenceSelections:
    unknown_slots = set(ids) - set(SLOTS)
    if unknown_slots:
        raise HTTPException(400, f"unknown slots: {sorted(unknown_slots)}")
    try:
        return selections_from_ids(
            lexicon, {k: v for k, v in ids.items() if v is not None}
        )
    except (KeyError, ValueError) as exc:
        raise HTTPException(400, f"bad selections: {exc}")


class Ovp2EnRequest(BaseModel):
    selections: dict[str, Optional[str]]
    continuous_past: bool = False


class En2OvpRequest(BaseModel):
    text: str
    score: bool = False


def create_app(
    config: Optional[AppConfig] = None,
    chat_backend: Optional[llm.ChatBackend] = None,
    embeddings_backend=None,
    lexicon: Optional[Lexicon] = None,
) -> FastAPI:
    """App factory; backends are injectable for tests."""
    config = config or AppConfig()
    lexicon = lexicon or load_lexicon()
    chat = chat_backend or make_chat_backend(config)
    embeddings = embeddings_backend or make_embeddings_backend(config)
    store = HistoryStore(config.history_path)

    app = FastAPI(title="ovp-toolkit")
    if config.cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=config.cors_origins,
            allow_methods=["*"],
            allow_headers=["*"],
        )
    app.state.store = store

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.get("/api/options")
    def options(request: Request):
        selections = _parse_selections(lexicon, dict(request.query_params))
        verdict = validate(selections)
        slots = [
            {
                "slot": sc.slot,
                "choices": [_lexeme_out(c) for c in sc.choices],
                "required": sc.required,
                "locked_reason": sc.locked_reason,
            }
            for sc in builder.valid_choices(lexicon, selections)
        ]
        out = {
            "slots": slots,
            "status": verdict.status,
            "selections": selections.ids(),
        }
        if verdict.complete:
            out["surface"] = render(selections, CORPUS_POLICY)
        return out

    @app.post("/api/translate/ovp2en")
    def translate_ovp2en(body: Ovp2EnRequest):
        selections = _parse_selections(lexicon, body.selections)
        verdict = validate(selections)
        if not verdict.complete:
            raise HTTPException(
                422,
                {
                    "status": verdict.status,
                    "missing": verdict.missing,
                    "problems": verdict.problems,
                },
            )
        try:
            result = ovp2en.translate_ovp(
                selections,
                chat,
                policy=CORPUS_POLICY,
                continuous_past=body.continuous_past,
            )
        except (llm.TransportError, llm.BackendError) as exc:
            raise HTTPException(
                502, f"chat backend unavailable, retry later: {exc}"
            )
        return {
            "surface": result.surface,
            "structured": [p.to_prompt() for p in result.structured.parts],
            "english": result.english,
        }

    @app.post("/api/translate/en2ovp")
    def translate_en2ovp(body: En2OvpRequest):
        if not body.text.strip():
            raise HTTPException(400, "text must be non-empty")
        if body.score and embeddings is None:
            raise HTTPException(409, "no embeddings backend configured")
        try:
            record = en2ovp.translate_english(body.text, chat, lexicon)
        except en2ovp.SegmentationError as exc:
            raise HTTPException(422, f"could not segment input: {exc}")
        except (llm.TransportError, llm.BackendError) as exc:
            raise HTTPException(
                502, f"chat backend unavailable, retry later: {exc}"
            )
        if body.score:
            record = evalharness.score_record(record, embeddings)
        store.append(record)
        return record.to_dict()

    @app.get("/api/history")
    def history(limit: int = 50, offset: int = 0):
        if limit < 0 or offset < 0:
            raise HTTPException(400, "limit and offset must be non-negative")
        records = store.load()
        page = records[offset : offset + limit] if limit else []
        return {
            "total": len(records),
            "records": [r.to_dict() for r in page],
        }

    @app.get("/api/random")
    def random_sentence(seed: int = 0):
        selections = builder.random_sentence(lexicon, seed)
        return {
            "selections": selections.ids(),
            "surface": render(selections, CORPUS_POLICY),
        }

    return app
