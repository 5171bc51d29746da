"""Selection-to-English pipeline: encode a complete sentence into the
English-only structured interlingua and have a chat backend phrase it."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import llm
from .english import TENSE_DISPLAY
from .grammar import RenderPolicy, SentenceSelections, render, validate
from .lexicon import Lexeme

# tense-suffix gloss -> (six-way tense label, going-to flavor)
TENSE_LABELS = {
    "past": ("past", False),
    "present": ("present", False),
    "present_continuous": ("present_continuous", False),
    "future": ("future", False),
    "future_going_to": ("future", True),
    "present_perfect": ("present_perfect", False),
}

# prefixes whose gloss+proximity+plurality tuple is shared with another entry
AMBIGUOUS_PREFIXES = frozenset({"op:a", "op:ma", "op:ai", "op:mai", "op:ni", "op:tei"})


class EncodeError(ValueError):
    """Encode was called on selections that are not a complete sentence."""


@dataclass(frozen=True)
class SentencePart:
    """One part of the structured interlingua.

    ``positional`` is set only for nouns carrying a proximity suffix.
    ``pronoun_proximity``, ``number`` and ``variant`` are round-trip
    metadata; ``variant`` (a vocabulary entry id) is recorded only when two
    entries share gloss, proximity and number and is never shown to the
    model.
    """

    part_of_speech: str  # subject | object | verb
    word: str
    positional: Optional[str] = None
    tense: Optional[str] = None
    going_to: bool = False
    number: Optional[str] = None
    pronoun_proximity: Optional[str] = None
    variant: Optional[str] = None

    def to_prompt(self) -> dict:
        out: dict = {"part_of_speech": self.part_of_speech, "word": self.word}
        if self.positional is not None:
            out["positional"] = self.positional
        if self.number == "plural":
            out["number"] = "plural"
        if self.tense is not None:
            label = "future_going_to" if self.going_to else self.tense
            out["tense"] = TENSE_DISPLAY[label]
        return out


@dataclass(frozen=True)
class StructuredSentence:
    parts: tuple[SentencePart, ...]

    def part(self, part_of_speech: str) -> Optional[SentencePart]:
        return next(
            (p for p in self.parts if p.part_of_speech == part_of_speech), None
        )

    def to_prompt_content(self) -> str:
        return llm._structured_user_content([p.to_prompt() for p in self.parts])


def _pronoun_part(part_of_speech: str, lexeme: Lexeme) -> SentencePart:
    return SentencePart(
        part_of_speech=part_of_speech,
        word=lexeme.gloss,
        number=lexeme.plurality,
        pronoun_proximity=lexeme.proximity,
        variant=lexeme.id if lexeme.id in AMBIGUOUS_PREFIXES else None,
    )


def encode(
    selections: SentenceSelections, continuous_past: bool = False
) -> StructuredSentence:
    """English-only structured record for a complete sentence.

    ``continuous_past`` renders the continuous suffix as past-continuous
    instead of present-continuous (the suffix covers both readings).
    """
    verdict = validate(selections)
    if not verdict.complete:
        raise EncodeError(f"cannot encode {verdict.status} selections")
    s = selections
    parts: list[SentencePart] = []

    if s.subject.category == "noun":
        parts.append(
            SentencePart(
                "subject", s.subject.gloss, positional=s.subject_suffix.proximity
            )
        )
    else:
        parts.append(_pronoun_part("subject", s.subject))

    if s.object is not None:
        parts.append(
            SentencePart(
                "object",
                s.object.gloss,
                positional=s.object_suffix.proximity,
                number=s.object_pronoun.plurality,
                variant=(
                    s.object_pronoun.id
                    if s.object_pronoun.id in AMBIGUOUS_PREFIXES
                    else None
                ),
            )
        )
    elif s.object_pronoun is not None:
        parts.append(_pronoun_part("object", s.object_pronoun))

    label, going_to = TENSE_LABELS[s.verb_tense.gloss]
    if label == "present_continuous" and continuous_past:
        label = "past_continuous"
    parts.append(
        SentencePart("verb", s.verb.gloss, tense=label, going_to=going_to)
    )
    return StructuredSentence(tuple(parts))


def render_english(structured: StructuredSentence, backend: llm.ChatBackend) -> str:
    messages = llm.RENDER_TEMPLATE.messages(structured.to_prompt_content())
    return llm.complete(backend, messages).strip()


@dataclass(frozen=True)
class OvpToEnglishResult:
    surface: str
    structured: StructuredSentence
    english: str


def translate_ovp(
    selections: SentenceSelections,
    backend: llm.ChatBackend,
    policy: RenderPolicy = RenderPolicy(),
    continuous_past: bool = False,
) -> OvpToEnglishResult:
    surface = render(selections, policy)
    structured = encode(selections, continuous_past=continuous_past)
    english = render_english(structured, backend)
    return OvpToEnglishResult(surface, structured, english)
