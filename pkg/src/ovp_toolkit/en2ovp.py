"""English-to-OVP pipeline: segment arbitrary English into simple
sentences, map them onto the available vocabulary (bracketed placeholders
for gaps), build OVP surface strings, and produce round-trip translations."""
from __future__ import annotations

import datetime as _dt
import json
from dataclasses import dataclass, field
from typing import Optional

from . import llm, ovp2en
from .english import (
    SIMPLE_TENSES,
    inflect,
    object_phrase,
    finish_sentence,
    subject_phrase,
)
from .grammar import (
    PIPELINE_POLICY,
    RenderPolicy,
    SentenceSelections,
    attach_object_suffix,
    attach_subject_suffix,
    compose_verb,
    lenite,
    order_constituents,
    render,
    validate,
)
from .lexicon import Lexeme, Lexicon, nfc

SIMPLE_SCHEMA = {
    "type": "array",
    "minItems": 1,
    "items": {
        "type": "object",
        "properties": {
            "subject": {"type": "string"},
            "verb": {"type": "string"},
            "verb_tense": {"enum": list(SIMPLE_TENSES)},
            "object": {"type": ["string", "null"]},
        },
        "required": ["subject", "verb", "verb_tense"],
    },
}

# six-way simple-sentence tense -> tense-suffix lexeme id
TENSE_SUFFIX = {
    "past": "ts:ku",
    "present": "ts:dü",
    "present_continuous": "ts:ti",
    "past_continuous": "ts:ti",
    "future": "ts:wei",
    "present_perfect": "ts:pü",
}

PRONOUN_SUBJECTS_TO_LEXEME = {
    "i": "sp:nüü",
    "you": "sp:üü",
    "he": "sp:uhu",
    "she": "sp:uhu",
    "it": "sp:uhu",
    "they": "sp:uhuw̃a",
    "we": "sp:nüügwa",
    "this": "sp:ihi",
    "these": "sp:ihiw̃a",
    "you and i": "sp:taa",
}

PRONOUN_OBJECTS_TO_PREFIX = {
    "me": "op:i",
    "him": "op:u",
    "her": "op:u",
    "it": "op:u",
    "them": "op:ui",
    "us": "op:tei",
    "you": "op:ü",
}

# pronoun prefix chosen for a noun object, by (proximity, plurality)
DEFAULT_PREFIX = {
    ("distal", "singular"): "op:u",
    ("distal", "plural"): "op:ui",
    ("proximal", "singular"): "op:ma",
    ("proximal", "plural"): "op:mai",
}

DEFAULT_SYNONYMS = {
    "stroll": "walk",
    "nap": "sleep",
    "giggle": "laugh",
    "speak": "talk",
}


class SegmentationError(RuntimeError):
    """The segmenter reply could not be parsed into simple sentences."""


@dataclass(frozen=True)
class SimpleSentence:
    subject: str
    verb: str
    verb_tense: str
    object: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.subject or not self.verb:
            raise ValueError("simple sentence needs a subject and a verb")
        if self.verb_tense not in SIMPLE_TENSES:
            raise ValueError(f"unknown tense {self.verb_tense!r}")

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "verb": self.verb,
            "verb_tense": self.verb_tense,
            "object": self.object,
        }


@dataclass(frozen=True)
class MappedRole:
    lexeme: Optional[Lexeme] = None
    placeholder: Optional[str] = None

    @property
    def is_placeholder(self) -> bool:
        return self.placeholder is not None

    @property
    def bracketed(self) -> str:
        return f"[{self.placeholder}]"


@dataclass(frozen=True)
class MappedSentence:
    subject: MappedRole
    verb: MappedRole
    object: Optional[MappedRole]
    tense: str  # six-way simple-sentence tense label
    subject_proximity: str = "distal"
    object_proximity: str = "distal"
    transitivity_ok: bool = True

    def placeholders(self) -> dict[str, str]:
        out = {}
        for role_name in ("subject", "verb", "object"):
            role = getattr(self, role_name)
            if role is not None and role.is_placeholder:
                out[role_name] = role.placeholder
        return out


def segment(text: str, backend: llm.ChatBackend) -> list[SimpleSentence]:
    if not text.strip():
        raise ValueError("input text is empty")
    messages = llm.SEGMENT_TEMPLATE.messages(text)
    try:
        records = llm.complete_structured(backend, messages, SIMPLE_SCHEMA)
    except llm.FormatError as exc:
        raise SegmentationError(str(exc)) from exc
    return [
        SimpleSentence(
            subject=r["subject"],
            verb=r["verb"],
            verb_tense=r["verb_tense"],
            object=r.get("object"),
        )
        for r in records
    ]


def _lookup_verb(
    lexicon: Lexicon, lemma: str, transitive: bool, synonyms: dict[str, str]
) -> Optional[Lexeme]:
    lemma = synonyms.get(lemma.lower(), lemma)
    preferred = "transitive-verb" if transitive else "intransitive-verb"
    other = "intransitive-verb" if transitive else "transitive-verb"
    for category in (preferred, other):
        hits = lexicon.find_gloss(category, lemma)
        if hits:
            return hits[0]
    return None


def map_vocab(
    simple: SimpleSentence,
    lexicon: Lexicon,
    synonyms: Optional[dict[str, str]] = None,
) -> MappedSentence:
    """Exact-gloss vocabulary mapping; misses become placeholders."""
    synonyms = DEFAULT_SYNONYMS if synonyms is None else synonyms
    subject_key = nfc(simple.subject).lower()
    if subject_key in PRONOUN_SUBJECTS_TO_LEXEME:
        subject = MappedRole(lexeme=lexicon.get(PRONOUN_SUBJECTS_TO_LEXEME[subject_key]))
    else:
        hits = lexicon.find_gloss("noun", simple.subject)
        subject = (
            MappedRole(lexeme=hits[0])
            if hits
            else MappedRole(placeholder=simple.subject)
        )

    obj: Optional[MappedRole] = None
    if simple.object is not None:
        object_key = nfc(simple.object).lower()
        if object_key in PRONOUN_OBJECTS_TO_PREFIX:
            obj = MappedRole(lexeme=lexicon.get(PRONOUN_OBJECTS_TO_PREFIX[object_key]))
        else:
            hits = lexicon.find_gloss("noun", simple.object)
            obj = (
                MappedRole(lexeme=hits[0])
                if hits
                else MappedRole(placeholder=simple.object)
            )

    verb_lexeme = _lookup_verb(lexicon, simple.verb, obj is not None, synonyms)
    verb = (
        MappedRole(lexeme=verb_lexeme)
        if verb_lexeme is not None
        else MappedRole(placeholder=simple.verb)
    )
    transitivity_ok = (
        verb_lexeme is None or verb_lexeme.is_transitive == (obj is not None)
    )
    return MappedSentence(
        subject=subject,
        verb=verb,
        object=obj,
        tense=simple.verb_tense,
        transitivity_ok=transitivity_ok,
    )


@dataclass(frozen=True)
class BuiltSentence:
    surface: str
    mapped: MappedSentence
    selections: Optional[SentenceSelections] = None

    @property
    def complete(self) -> bool:
        return self.selections is not None


def build_ovp(
    mapped: MappedSentence,
    lexicon: Lexicon,
    policy: RenderPolicy = PIPELINE_POLICY,
) -> BuiltSentence:
    """OVP surface for a mapped sentence; placeholders keep real affixes."""
    tense = lexicon.get(TENSE_SUFFIX[mapped.tense])
    m = mapped

    object_is_prefix = (
        m.object is not None
        and m.object.lexeme is not None
        and m.object.lexeme.category == "object-pronoun-prefix"
    )
    noun_object = m.object if (m.object is not None and not object_is_prefix) else None

    fully_mapped = (
        not m.subject.is_placeholder
        and not m.verb.is_placeholder
        and (m.object is None or not m.object.is_placeholder)
    )
    if fully_mapped and (noun_object is None or noun_object.lexeme.category == "noun"):
        sel = SentenceSelections(subject=m.subject.lexeme)
        if m.subject.lexeme.category == "noun":
            suffix = "ss:ii" if m.subject_proximity == "proximal" else "ss:uu"
            sel = sel.with_slot("subject_suffix", lexicon.get(suffix))
        sel = sel.with_slot("verb", m.verb.lexeme)
        sel = sel.with_slot("verb_tense", tense)
        if noun_object is not None:
            sel = sel.with_slot("object", noun_object.lexeme)
            suffix = "os:eika" if m.object_proximity == "proximal" else "os:oka"
            sel = sel.with_slot("object_suffix", lexicon.get(suffix))
            prefix = DEFAULT_PREFIX[(m.object_proximity, "singular")]
            sel = sel.with_slot("object_pronoun", lexicon.get(prefix))
        elif object_is_prefix:
            sel = sel.with_slot("object_pronoun", m.object.lexeme)
        if validate(sel).complete:
            return BuiltSentence(render(sel, policy), m, sel)

    # placeholder path: same constituent shapes, brackets in stem position
    subject_is_pronoun = (
        m.subject.lexeme is not None
        and m.subject.lexeme.category == "subject-pronoun"
    )
    if m.subject.is_placeholder:
        suffix = "ii" if m.subject_proximity == "proximal" else "uu"
        subject_np = f"{m.subject.bracketed}-{suffix}"
    elif subject_is_pronoun:
        subject_np = m.subject.lexeme.surface
    else:
        subject_np = attach_subject_suffix(m.subject.lexeme, m.subject_proximity)

    object_np = None
    prefix_lexeme = None
    if noun_object is not None:
        if noun_object.is_placeholder:
            suffix = "neika" if m.object_proximity == "proximal" else "noka"
            object_np = f"{noun_object.bracketed}-{suffix}"
        else:
            object_np = attach_object_suffix(noun_object.lexeme, m.object_proximity)
        prefix_lexeme = lexicon.get(DEFAULT_PREFIX[(m.object_proximity, "singular")])
    elif object_is_prefix:
        prefix_lexeme = m.object.lexeme

    if m.verb.is_placeholder:
        stem = m.verb.bracketed  # no lenition on bracketed lemmas
        verb_complex = (
            f"{prefix_lexeme.surface}-{stem}-{tense.surface}"
            if prefix_lexeme is not None
            else f"{stem}-{tense.surface}"
        )
    else:
        verb_complex = compose_verb(
            m.verb.lexeme,
            prefix_lexeme if m.verb.lexeme.is_transitive else None,
            tense,
        )
    words = order_constituents(
        subject_np, subject_is_pronoun, object_np, verb_complex, policy
    )
    return BuiltSentence(nfc(" ".join(words) + "."), m)


def render_simple_english(simple: SimpleSentence, seen: Optional[set[str]] = None) -> str:
    """Plain deterministic English rendering of a simple sentence."""
    seen = set() if seen is None else seen
    words = [
        subject_phrase(simple.subject, seen),
        inflect(simple.verb, simple.verb_tense, simple.subject),
    ]
    if simple.object is not None:
        words.append(object_phrase(simple.object, seen))
    return finish_sentence(words)


ROLE_TOKENS = {"subject": "[SUBJECT]", "verb": "[VERB]", "object": "[OBJECT]"}


def comparator(
    simple: SimpleSentence,
    lexicon: Lexicon,
    synonyms: Optional[dict[str, str]] = None,
    seen: Optional[set[str]] = None,
) -> str:
    """English rendering with out-of-vocabulary roles masked by role tokens."""
    seen = set() if seen is None else seen
    mapped = map_vocab(simple, lexicon, synonyms)
    masked = simple.to_dict()
    for role, token in ROLE_TOKENS.items():
        mapped_role = getattr(mapped, role)
        if mapped_role is not None and mapped_role.is_placeholder:
            masked[role] = token
    return finish_sentence(
        [
            subject_phrase(masked["subject"], seen),
            inflect(masked["verb"], simple.verb_tense, masked["subject"]),
        ]
        + ([object_phrase(masked["object"], seen)] if masked["object"] else [])
    )


def encode_built(built: BuiltSentence) -> ovp2en.StructuredSentence:
    """Structured interlingua for a built sentence, placeholders included."""
    if built.selections is not None:
        return ovp2en.encode(built.selections)
    m = built.mapped
    parts: list[ovp2en.SentencePart] = []
    if m.subject.is_placeholder:
        parts.append(
            ovp2en.SentencePart(
                "subject", m.subject.bracketed, positional=m.subject_proximity
            )
        )
    elif m.subject.lexeme.category == "noun":
        parts.append(
            ovp2en.SentencePart(
                "subject", m.subject.lexeme.gloss, positional=m.subject_proximity
            )
        )
    else:
        parts.append(ovp2en._pronoun_part("subject", m.subject.lexeme))
    if m.object is not None:
        if m.object.is_placeholder:
            parts.append(
                ovp2en.SentencePart(
                    "object", m.object.bracketed, positional=m.object_proximity
                )
            )
        elif m.object.lexeme.category == "object-pronoun-prefix":
            parts.append(ovp2en._pronoun_part("object", m.object.lexeme))
        else:
            parts.append(
                ovp2en.SentencePart(
                    "object", m.object.lexeme.gloss, positional=m.object_proximity
                )
            )
    word = m.verb.bracketed if m.verb.is_placeholder else m.verb.lexeme.gloss
    # the tense suffix chosen in build_ovp collapses past_continuous onto the
    # continuous suffix; the round trip reads it back as present continuous
    tense_label = {"past_continuous": "present_continuous"}.get(m.tense, m.tense)
    parts.append(ovp2en.SentencePart("verb", word, tense=tense_label))
    return ovp2en.StructuredSentence(tuple(parts))


def backwards(built: BuiltSentence, backend: llm.ChatBackend) -> str:
    return ovp2en.render_english(encode_built(built), backend)


@dataclass
class TranslationRecord:
    input: str
    simples: list[SimpleSentence]
    comparators: list[str]
    ovp_surfaces: list[str]
    backwards: list[str]
    scores: Optional[dict[str, float]] = None
    model_name: str = "mock"
    timestamp: str = ""

    def to_dict(self) -> dict:
        return {
            "input": self.input,
            "simples": [s.to_dict() for s in self.simples],
            "comparators": self.comparators,
            "ovp_surfaces": self.ovp_surfaces,
            "backwards": self.backwards,
            "scores": self.scores,
            "model_name": self.model_name,
            "timestamp": self.timestamp,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: dict) -> "TranslationRecord":
        return cls(
            input=data["input"],
            simples=[
                SimpleSentence(
                    subject=s["subject"],
                    verb=s["verb"],
                    verb_tense=s["verb_tense"],
                    object=s.get("object"),
                )
                for s in data["simples"]
            ],
            comparators=list(data["comparators"]),
            ovp_surfaces=list(data["ovp_surfaces"]),
            backwards=list(data["backwards"]),
            scores=data.get("scores"),
            model_name=data.get("model_name", "unknown"),
            timestamp=data.get("timestamp", ""),
        )


def translate_english(
    text: str,
    backend: llm.ChatBackend,
    lexicon: Lexicon,
    policy: RenderPolicy = PIPELINE_POLICY,
    synonyms: Optional[dict[str, str]] = None,
) -> TranslationRecord:
    """Full segment -> map -> build -> round-trip pipeline (Fig-3 shape)."""
    simples = segment(text, backend)
    comparators: list[str] = []
    surfaces: list[str] = []
    backwards_sentences: list[str] = []
    seen: set[str] = set()
    for simple in simples:
        comparators.append(comparator(simple, lexicon, synonyms, seen))
        built = build_ovp(map_vocab(simple, lexicon, synonyms), lexicon, policy)
        surfaces.append(built.surface)
        backwards_sentences.append(backwards(built, backend))
    model_name = getattr(backend, "model_name", None) or getattr(
        getattr(backend, "config", None), "model_name", "unknown"
    )
    return TranslationRecord(
        input=text,
        simples=simples,
        comparators=comparators,
        ovp_surfaces=surfaces,
        backwards=backwards_sentences,
        model_name=model_name,
        timestamp=_dt.datetime.now(_dt.timezone.utc).isoformat(),
    )
