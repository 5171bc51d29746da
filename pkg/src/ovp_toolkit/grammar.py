"""Morphophonology, agreement checks, sentence validation and rendering.

Everything here is pure: selections are immutable and operations return
new values, so concurrent readers need no coordination.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from .lexicon import GLOTTAL_STOP, Lexeme, Lexicon, nfc

SLOTS = (
    "subject",
    "subject_suffix",
    "verb",
    "verb_tense",
    "object",
    "object_suffix",
    "object_pronoun",
)

SLOT_CATEGORY = {
    "subject": ("noun", "subject-pronoun"),
    "subject_suffix": ("subject-suffix",),
    "verb": ("transitive-verb", "intransitive-verb"),
    "verb_tense": ("tense-suffix",),
    "object": ("noun",),
    "object_suffix": ("object-suffix",),
    "object_pronoun": ("object-pronoun-prefix",),
}

SUBJECT_SUFFIX_SURFACE = {"proximal": "ii", "distal": "uu"}
OBJECT_SUFFIX_SURFACE = {"proximal": "eika", "distal": "oka"}


class CategoryError(ValueError):
    """A lexeme of the wrong category was supplied to a morphology rule."""


class AgreementError(ValueError):
    """Co-occurring selections violate an agreement rule."""


class RenderError(ValueError):
    """Render was called on selections that are not a complete sentence."""


@dataclass(frozen=True)
class SentenceSelections:
    """The seven-slot selection state of the sentence builder."""

    subject: Optional[Lexeme] = None
    subject_suffix: Optional[Lexeme] = None
    verb: Optional[Lexeme] = None
    verb_tense: Optional[Lexeme] = None
    object: Optional[Lexeme] = None
    object_suffix: Optional[Lexeme] = None
    object_pronoun: Optional[Lexeme] = None

    def get(self, slot: str) -> Optional[Lexeme]:
        return getattr(self, slot)

    def with_slot(self, slot: str, lexeme: Optional[Lexeme]) -> "SentenceSelections":
        if slot not in SLOTS:
            raise ValueError(f"unknown slot {slot!r}")
        return replace(self, **{slot: lexeme})

    def filled_slots(self) -> list[str]:
        return [s for s in SLOTS if self.get(s) is not None]

    def ids(self) -> dict[str, str]:
        return {s: self.get(s).id for s in SLOTS if self.get(s) is not None}


def selections_from_ids(lexicon: Lexicon, ids: dict[str, str]) -> SentenceSelections:
    sel = SentenceSelections()
    for slot, lexeme_id in ids.items():
        if slot not in SLOTS:
            raise ValueError(f"unknown slot {slot!r}")
        lexeme = lexicon.get(lexeme_id)
        if lexeme.category not in SLOT_CATEGORY[slot]:
            raise CategoryError(
                f"lexeme {lexeme_id!r} ({lexeme.category}) cannot fill slot {slot!r}"
            )
        sel = sel.with_slot(slot, lexeme)
    return sel


@dataclass(frozen=True)
class RenderPolicy:
    """Constituent-order knobs for :func:`render`.

    ``noun_subject``: "initial" puts a suffixed noun subject before the
    object and verb; "final" puts it after the verb complex (the order the
    English-to-OVP pipeline prints).

    ``pronoun_no_object``: where a pronoun subject goes when the sentence
    has no noun object; "pre_verb" or "post_verb".  With a noun object a
    pronoun subject always sits between the object and the verb.
    """

    noun_subject: str = "initial"
    pronoun_no_object: str = "pre_verb"


# order observed in the corpus of attested sentences
CORPUS_POLICY = RenderPolicy(noun_subject="initial", pronoun_no_object="post_verb")
# order the English-to-OVP pipeline prints
PIPELINE_POLICY = RenderPolicy(noun_subject="final", pronoun_no_object="pre_verb")


def attach_subject_suffix(noun: Lexeme, proximity: str) -> str:
    if noun.category != "noun":
        raise CategoryError(f"subject suffix attaches to nouns, got {noun.category}")
    return f"{noun.surface}-{SUBJECT_SUFFIX_SURFACE[proximity]}"


def _object_suffix_takes_n(noun: Lexeme) -> bool:
    if noun.object_suffix_n is not None:
        return noun.object_suffix_n
    return not noun.glottal_final


def attach_object_suffix(noun: Lexeme, proximity: str) -> str:
    if noun.category != "noun":
        raise CategoryError(f"object suffix attaches to nouns, got {noun.category}")
    n = "n" if _object_suffix_takes_n(noun) else ""
    return f"{noun.surface}-{n}{OBJECT_SUFFIX_SURFACE[proximity]}"


def lenite(verb: Lexeme) -> str:
    """Stem variant used after an object-pronoun prefix."""
    if not verb.is_verb:
        raise CategoryError(f"lenition applies to verbs, got {verb.category}")
    return verb.lenited_surface or verb.surface


def compose_verb(
    verb: Lexeme, object_pronoun: Optional[Lexeme], tense: Lexeme
) -> str:
    if tense.category != "tense-suffix":
        raise CategoryError(f"expected tense-suffix, got {tense.category}")
    if not verb.is_verb:
        raise CategoryError(f"expected a verb, got {verb.category}")
    if object_pronoun is not None and not verb.is_transitive:
        raise AgreementError("object pronoun prefixed to an intransitive verb")
    if object_pronoun is not None:
        return f"{object_pronoun.surface}-{lenite(verb)}-{tense.surface}"
    return f"{verb.surface}-{tense.surface}"


PROXIMAL_PREFIXES = frozenset({"a", "ai", "ma", "mai"})
DISTAL_PREFIXES = frozenset({"u", "ui"})


def agreement_ok(object_suffix: Lexeme, object_pronoun: Lexeme) -> bool:
    """A noun-object suffix and the verb's pronoun prefix must agree in proximity."""
    if object_suffix.category != "object-suffix":
        raise CategoryError(f"expected object-suffix, got {object_suffix.category}")
    if object_pronoun.category != "object-pronoun-prefix":
        raise CategoryError(
            f"expected object-pronoun-prefix, got {object_pronoun.category}"
        )
    if object_suffix.proximity == "proximal":
        return object_pronoun.surface in PROXIMAL_PREFIXES
    return object_pronoun.surface in DISTAL_PREFIXES


@dataclass(frozen=True)
class ValidationResult:
    status: str  # "complete" | "incomplete" | "invalid"
    missing: tuple[str, ...] = ()
    problems: tuple[str, ...] = ()

    @property
    def complete(self) -> bool:
        return self.status == "complete"


def validate(selections: SentenceSelections) -> ValidationResult:
    s = selections
    problems: list[str] = []

    if s.verb is not None and not s.verb.is_transitive:
        for slot in ("object", "object_suffix", "object_pronoun"):
            if s.get(slot) is not None:
                problems.append(f"intransitive verb cannot take {slot.replace('_', ' ')}")

    if s.subject is not None:
        if s.subject.category == "noun" and s.subject_suffix is None:
            problems.append("missing subject suffix")
        if s.subject.category == "subject-pronoun" and s.subject_suffix is not None:
            problems.append("pronoun subjects take no subject suffix")

    if s.object is not None:
        if s.object_suffix is None:
            problems.append("missing object suffix")
        if s.object_pronoun is None:
            problems.append("missing object pronoun")
        elif s.object_pronoun.proximity is None:
            problems.append("object pronoun cannot corefer with a noun object")
        if (
            s.object_suffix is not None
            and s.object_pronoun is not None
            and not agreement_ok(s.object_suffix, s.object_pronoun)
        ):
            problems.append("object suffix and object pronoun disagree in proximity")
    elif s.object_suffix is not None:
        problems.append("missing noun object for object suffix")

    missing = tuple(
        slot for slot in ("subject", "verb", "verb_tense") if s.get(slot) is None
    )
    if problems:
        return ValidationResult("invalid", missing, tuple(problems))
    if missing:
        return ValidationResult("incomplete", missing)
    return ValidationResult("complete")


def render(
    selections: SentenceSelections, policy: RenderPolicy = RenderPolicy()
) -> str:
    """Surface string for a complete sentence, always ending in a period."""
    verdict = validate(selections)
    if not verdict.complete:
        raise RenderError(
            f"cannot render {verdict.status} selections: "
            + ", ".join(verdict.missing + verdict.problems)
        )
    s = selections
    subject_np = (
        attach_subject_suffix(s.subject, s.subject_suffix.proximity)
        if s.subject.category == "noun"
        else s.subject.surface
    )
    object_np = (
        attach_object_suffix(s.object, s.object_suffix.proximity)
        if s.object is not None
        else None
    )
    verb_complex = compose_verb(s.verb, s.object_pronoun, s.verb_tense)
    words = order_constituents(
        subject_np,
        s.subject.category == "subject-pronoun",
        object_np,
        verb_complex,
        policy,
    )
    return nfc(" ".join(words) + ".")


def order_constituents(
    subject_np: str,
    subject_is_pronoun: bool,
    object_np: Optional[str],
    verb_complex: str,
    policy: RenderPolicy,
) -> list[str]:
    """Shared constituent ordering, also used for partial (placeholder) sentences."""
    if subject_is_pronoun:
        if object_np is not None:
            # a pronoun subject always sits between the object and the verb
            return [object_np, subject_np, verb_complex]
        if policy.pronoun_no_object == "post_verb":
            return [verb_complex, subject_np]
        return [subject_np, verb_complex]
    body = [object_np, verb_complex] if object_np is not None else [verb_complex]
    if policy.noun_subject == "final":
        return body + [subject_np]
    return [subject_np] + body
