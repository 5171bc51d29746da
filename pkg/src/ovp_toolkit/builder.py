"""Incremental selection engine: valid choices per slot, choice application
with dependent-slot clearing, and seeded random sentence generation."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .grammar import (
    DISTAL_PREFIXES,
    PROXIMAL_PREFIXES,
    SLOTS,
    SentenceSelections,
    agreement_ok,
    validate,
)
from .lexicon import Lexeme, Lexicon


class ConstraintError(ValueError):
    """A choice outside the currently valid set was applied."""


@dataclass(frozen=True)
class SlotChoices:
    slot: str
    choices: tuple[Lexeme, ...]
    required: bool = False
    locked_reason: Optional[str] = None

    @property
    def locked(self) -> bool:
        return self.locked_reason is not None


@dataclass(frozen=True)
class ChangeReport:
    """Result of applying a choice: the new state plus any cleared slots."""

    selections: SentenceSelections
    cleared: tuple[str, ...] = ()


def _object_pronoun_choices(lexicon: Lexicon, s: SentenceSelections) -> list[Lexeme]:
    prefixes = lexicon.by_category("object-pronoun-prefix")
    if s.object_suffix is not None:
        return [p for p in prefixes if agreement_ok(s.object_suffix, p)]
    if s.object is not None:
        return [p for p in prefixes if p.proximity is not None]
    return prefixes


def valid_choices(lexicon: Lexicon, selections: SentenceSelections) -> list[SlotChoices]:
    """One SlotChoices per slot; empty + locked_reason when a slot is unavailable."""
    s = selections
    intransitive = s.verb is not None and not s.verb.is_transitive
    out: list[SlotChoices] = []

    def add(slot, choices, required=False, locked_reason=None):
        out.append(SlotChoices(slot, tuple(choices), required, locked_reason))

    add("subject", lexicon.subjects(), required=s.subject is None)

    if s.subject is not None and s.subject.category == "subject-pronoun":
        add("subject_suffix", (), locked_reason="pronoun subjects take no suffix")
    else:
        add(
            "subject_suffix",
            lexicon.by_category("subject-suffix"),
            required=s.subject is not None and s.subject_suffix is None,
        )

    add("verb", lexicon.verbs(), required=s.verb is None)
    add("verb_tense", lexicon.by_category("tense-suffix"), required=s.verb_tense is None)

    if intransitive:
        for slot in ("object", "object_suffix", "object_pronoun"):
            add(slot, (), locked_reason="intransitive verb")
        return out

    if s.object_pronoun is not None and s.object_pronoun.proximity is None:
        add("object", (), locked_reason="object pronoun cannot corefer with a noun object")
        add(
            "object_suffix",
            (),
            locked_reason="object pronoun cannot corefer with a noun object",
        )
    else:
        add(
            "object",
            lexicon.by_category("noun"),
            required=s.object is None and s.object_suffix is not None,
        )
        suffixes = lexicon.by_category("object-suffix")
        if s.object_pronoun is not None:
            suffixes = [x for x in suffixes if agreement_ok(x, s.object_pronoun)]
        add(
            "object_suffix",
            suffixes,
            required=s.object is not None and s.object_suffix is None,
        )

    add(
        "object_pronoun",
        _object_pronoun_choices(lexicon, s),
        required=s.object is not None and s.object_pronoun is None,
    )
    return out


def choices_for(lexicon: Lexicon, selections: SentenceSelections, slot: str) -> SlotChoices:
    for sc in valid_choices(lexicon, selections):
        if sc.slot == slot:
            return sc
    raise ValueError(f"unknown slot {slot!r}")


def apply_choice(
    lexicon: Lexicon, selections: SentenceSelections, slot: str, lexeme: Lexeme
) -> ChangeReport:
    sc = choices_for(lexicon, selections, slot)
    if sc.locked or lexeme.id not in {c.id for c in sc.choices}:
        reason = sc.locked_reason or "choice is not currently valid"
        raise ConstraintError(f"{lexeme.id!r} cannot fill {slot!r}: {reason}")
    new = selections.with_slot(slot, lexeme)
    cleared: list[str] = []
    if slot == "subject" and lexeme.category == "subject-pronoun":
        if new.subject_suffix is not None:
            new = new.with_slot("subject_suffix", None)
            cleared.append("subject_suffix")
    if slot == "verb" and not lexeme.is_transitive:
        for dep in ("object", "object_suffix", "object_pronoun"):
            if new.get(dep) is not None:
                new = new.with_slot(dep, None)
                cleared.append(dep)
    return ChangeReport(new, tuple(cleared))


def random_sentence(lexicon: Lexicon, seed: int) -> SentenceSelections:
    """A complete sentence built by uniform random choices; deterministic per seed.

    Transitive verbs always receive an object-pronoun prefix; whether a noun
    object is also included is decided by a fair coin.
    """
    rng = random.Random(seed)
    s = SentenceSelections()

    def pick(slot: str) -> SentenceSelections:
        sc = choices_for(lexicon, s, slot)
        return apply_choice(lexicon, s, slot, rng.choice(sc.choices)).selections

    s = pick("subject")
    if s.subject.category == "noun":
        s = pick("subject_suffix")
    s = pick("verb")
    s = pick("verb_tense")
    if s.verb.is_transitive:
        if rng.random() < 0.5:
            s = pick("object")
            s = pick("object_suffix")
        s = pick("object_pronoun")
    assert validate(s).complete
    return s
