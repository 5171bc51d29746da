"""Vocabulary entries and lexicon loading.

All surface forms are NFC-normalized on load; the tilde-w used by a few
stems is stored as ``w`` + U+0303 (there is no precomposed codepoint).
"""
from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterator, Optional

CATEGORIES = frozenset(
    {
        "transitive-verb",
        "intransitive-verb",
        "noun",
        "subject-pronoun",
        "object-pronoun-prefix",
        "subject-suffix",
        "object-suffix",
        "tense-suffix",
    }
)

VERB_CATEGORIES = frozenset({"transitive-verb", "intransitive-verb"})

GLOTTAL_STOP = "'"


class LexiconError(ValueError):
    """Raised for malformed lexicon data or unknown lexeme lookups."""


def nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


@dataclass(frozen=True)
class Lexeme:
    id: str
    surface: str
    gloss: str
    category: str
    lenited_surface: Optional[str] = None
    plurality: Optional[str] = None
    proximity: Optional[str] = None
    alt_surfaces: tuple[str, ...] = ()
    # override for the object-suffix n-insertion rule; None = computed
    object_suffix_n: Optional[bool] = None

    def __post_init__(self) -> None:
        if self.category not in CATEGORIES:
            raise LexiconError(f"unknown category {self.category!r} for {self.id}")
        if self.lenited_surface is not None and self.category not in VERB_CATEGORIES:
            raise LexiconError(f"lenited_surface on non-verb lexeme {self.id}")
        if self.category == "noun" and self.proximity is not None:
            raise LexiconError(f"proximity on noun lexeme {self.id}")

    @property
    def is_verb(self) -> bool:
        return self.category in VERB_CATEGORIES

    @property
    def is_transitive(self) -> bool:
        return self.category == "transitive-verb"

    @property
    def glottal_final(self) -> bool:
        return self.surface.endswith(GLOTTAL_STOP)


@dataclass
class Lexicon:
    entries: dict[str, Lexeme] = field(default_factory=dict)
    version: str = "0"

    def __iter__(self) -> Iterator[Lexeme]:
        return iter(self.entries.values())

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, lexeme_id: str) -> Lexeme:
        try:
            return self.entries[lexeme_id]
        except KeyError:
            raise LexiconError(f"unknown lexeme id {lexeme_id!r}") from None

    def by_category(self, category: str) -> list[Lexeme]:
        if category not in CATEGORIES:
            raise LexiconError(f"unknown category {category!r}")
        return [e for e in self.entries.values() if e.category == category]

    def verbs(self) -> list[Lexeme]:
        return [e for e in self.entries.values() if e.is_verb]

    def subjects(self) -> list[Lexeme]:
        return self.by_category("noun") + self.by_category("subject-pronoun")

    def find_gloss(self, category: str, gloss: str) -> list[Lexeme]:
        """All entries of a category whose gloss matches (case-insensitive, NFC)."""
        needle = nfc(gloss).lower()
        return [e for e in self.by_category(category) if nfc(e.gloss).lower() == needle]

    def surfaces(self) -> set[str]:
        out: set[str] = set()
        for e in self.entries.values():
            out.add(e.surface)
            out.update(e.alt_surfaces)
            if e.lenited_surface:
                out.add(e.lenited_surface)
        return out


def _lexeme_from_record(rec: dict) -> Lexeme:
    known = {
        "id",
        "surface",
        "gloss",
        "category",
        "lenited_surface",
        "plurality",
        "proximity",
        "alt_surfaces",
        "object_suffix_n",
    }
    extra = set(rec) - known
    if extra:
        raise LexiconError(f"unknown fields {sorted(extra)} in lexeme record")
    rec = dict(rec)
    for key in ("surface", "gloss", "lenited_surface"):
        if rec.get(key) is not None:
            rec[key] = nfc(rec[key])
    rec["alt_surfaces"] = tuple(nfc(s) for s in rec.get("alt_surfaces", ()))
    return Lexeme(**rec)


def load_lexicon(path: Optional[str] = None) -> Lexicon:
    """Load a lexicon from a JSON file, defaulting to the bundled vocabulary."""
    if path is None:
        raw = (
            resources.files("ovp_toolkit.data").joinpath("lexicon.json").read_text("utf-8")
        )
    else:
        with open(path, encoding="utf-8") as f:
            raw = f.read()
    doc = json.loads(raw)
    lex = Lexicon(version=str(doc.get("version", "0")))
    for rec in doc["entries"]:
        lexeme = _lexeme_from_record(rec)
        if lexeme.id in lex.entries:
            raise LexiconError(f"duplicate lexeme id {lexeme.id!r}")
        lex.entries[lexeme.id] = lexeme
    for category in CATEGORIES:
        if not lex.by_category(category):
            raise LexiconError(f"lexicon has no entries of category {category!r}")
    return lex
