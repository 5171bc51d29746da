"""English-side helpers: verb inflection, deterministic sentence rendering,
and a small heuristic clause segmenter used by the offline mock backend.

Two inflectors live here on purpose.  ``inflect`` produces natural English
(irregular pasts and all) and backs the plain simple/comparator renderings.
``inflect_regular`` applies strictly regular morphology so that the verb
lemma always survives as a substring of the mock backend's output, which is
what the keyword-fidelity checks rely on.
"""
from __future__ import annotations

import re
from typing import Optional

TENSES = (
    "past",
    "present",
    "present_continuous",
    "past_continuous",
    "future",
    "future_going_to",
    "present_perfect",
)

# the six labels the segmenter is allowed to emit
SIMPLE_TENSES = (
    "past",
    "present",
    "future",
    "past_continuous",
    "present_continuous",
    "present_perfect",
)

TENSE_DISPLAY = {
    "past": "past",
    "present": "present",
    "present_continuous": "present continuous (-ing)",
    "past_continuous": "past continuous (was -ing)",
    "future": "future (will)",
    "future_going_to": "future (going to)",
    "present_perfect": "present perfect (have -ed)",
}
TENSE_FROM_DISPLAY = {v: k for k, v in TENSE_DISPLAY.items()}

PRONOUN_SUBJECTS = {"i", "you", "he", "she", "it", "we", "they", "this", "these"}
PRONOUN_OBJECTS = {"me", "you", "him", "her", "it", "us", "them"}
PLURAL_SUBJECTS = {"we", "they", "you", "these", "those"}

IRREGULAR_PAST = {
    "eat": "ate", "see": "saw", "drink": "drank", "hear": "heard", "hit": "hit",
    "find": "found", "read": "read", "sit": "sat", "sleep": "slept", "run": "ran",
    "go": "went", "stand": "stood", "lie": "lay", "fall": "fell", "sing": "sang",
    "fly": "flew", "swim": "swam", "make": "made", "drive": "drove", "win": "won",
    "buy": "bought", "sell": "sold", "bring": "brought", "hold": "held",
    "teach": "taught", "write": "wrote", "draw": "drew", "throw": "threw",
    "come": "came", "take": "took", "give": "gave", "speak": "spoke",
    "tell": "told", "catch": "caught", "think": "thought", "know": "knew",
    "leave": "left", "meet": "met", "ride": "rode", "sweep": "swept",
}
IRREGULAR_PARTICIPLE = {
    "eat": "eaten", "see": "seen", "drink": "drunk", "go": "gone", "sing": "sung",
    "swim": "swum", "fall": "fallen", "fly": "flown", "drive": "driven",
    "write": "written", "draw": "drawn", "throw": "thrown", "come": "come",
    "take": "taken", "give": "given", "speak": "spoken", "know": "known",
    "run": "run", "hit": "hit", "read": "read", "lie": "lain", "ride": "ridden",
}

# lemmas the segmenter recognizes: lexicon glosses plus common fixture verbs
KNOWN_VERBS = [
    "eat", "see", "drink", "hear", "smell", "hit", "talk", "chase", "climb",
    "cook", "find", "read", "write", "visit", "sit", "sleep", "sneeze", "run",
    "go", "walk", "stand", "lie", "fall", "work", "smile", "sing", "laugh",
    "play", "fly", "dance", "swim", "chirp", "make", "share", "love", "drive",
    "wait", "watch", "hum", "listen", "perform", "bake", "paint", "jump",
    "shout", "wash", "migrate", "return", "hike", "clean", "open", "close",
    "build", "help", "call", "carry", "throw", "win", "study", "teach",
    "learn", "buy", "sell", "bring", "hold", "wave", "cry", "whisper", "knit",
    "draw", "sketch", "ride", "sweep", "rest", "shine", "bark",
]

DETERMINERS = {
    "the", "a", "an", "my", "your", "his", "her", "its", "our", "their",
    "this", "that", "these", "those", "some", "two", "three",
}
STOP_WORDS = {
    "in", "on", "at", "to", "with", "for", "of", "by", "from", "while",
    "yesterday", "today", "tomorrow", "last", "night", "deeply", "quickly",
    "slowly", "loudly", "quietly", "together", "outside", "inside",
}

VOWELS = "aeiou"


def _vowel_groups(word: str) -> int:
    return len(re.findall(f"[{VOWELS}]+", word))


def _doubles_final(word: str) -> bool:
    # monosyllabic consonant-vowel-consonant stems double: swim -> swimm-
    return (
        len(word) >= 3
        and _vowel_groups(word) == 1
        and word[-1] not in VOWELS + "wxy"
        and word[-2] in VOWELS
        and word[-3] not in VOWELS
    )


def _head_rest(lemma: str) -> tuple[str, str]:
    head, _, rest = lemma.partition(" ")
    return head, (" " + rest if rest else "")


def third_person(lemma: str) -> str:
    head, rest = _head_rest(lemma)
    if head.endswith("y") and len(head) > 1 and head[-2] not in VOWELS:
        return head[:-1] + "ies" + rest
    if head.endswith(("s", "x", "z", "ch", "sh", "o")):
        return head + "es" + rest
    return head + "s" + rest


def present_participle(lemma: str) -> str:
    head, rest = _head_rest(lemma)
    if head.endswith("ie"):
        head = head[:-2] + "y"
    elif head.endswith("e") and not head.endswith("ee"):
        head = head[:-1]
    elif _doubles_final(head):
        head = head + head[-1]
    return head + "ing" + rest


def past_tense(lemma: str) -> str:
    head, rest = _head_rest(lemma)
    if head in IRREGULAR_PAST:
        return IRREGULAR_PAST[head] + rest
    return _regular_past(head) + rest


def past_participle(lemma: str) -> str:
    head, rest = _head_rest(lemma)
    if head in IRREGULAR_PARTICIPLE:
        return IRREGULAR_PARTICIPLE[head] + rest
    if head in IRREGULAR_PAST:
        return IRREGULAR_PAST[head] + rest
    return _regular_past(head) + rest


def _regular_past(head: str) -> str:
    if head.endswith("e"):
        return head + "d"
    if head.endswith("y") and len(head) > 1 and head[-2] not in VOWELS:
        return head[:-1] + "ied"
    if _doubles_final(head):
        return head + head[-1] + "ed"
    return head + "ed"


def _be(subject: str, past: bool = False) -> str:
    s = subject.lower()
    if s == "i":
        return "was" if past else "am"
    if s in PLURAL_SUBJECTS:
        return "were" if past else "are"
    return "was" if past else "is"


def _have(subject: str) -> str:
    s = subject.lower()
    return "have" if s in PLURAL_SUBJECTS or s == "i" else "has"


def is_placeholder(word: str) -> bool:
    return word.startswith("[") and word.endswith("]")


def inflect(lemma: str, tense: str, subject: str) -> str:
    """Natural-English verb phrase for a lemma, tense and subject word."""
    if is_placeholder(lemma):
        return _inflect_token(lemma, tense, subject)
    if tense == "past":
        return past_tense(lemma)
    if tense == "present":
        s = subject.lower()
        if s == "i" or s in PLURAL_SUBJECTS:
            return lemma
        return third_person(lemma)
    if tense == "present_continuous":
        return f"{_be(subject)} {present_participle(lemma)}"
    if tense == "past_continuous":
        return f"{_be(subject, past=True)} {present_participle(lemma)}"
    if tense == "future":
        return f"will {lemma}"
    if tense == "future_going_to":
        return f"{_be(subject)} going to {lemma}"
    if tense == "present_perfect":
        return f"{_have(subject)} {past_participle(lemma)}"
    raise ValueError(f"unknown tense {tense!r}")


def inflect_regular(lemma: str, tense: str, subject: str) -> str:
    """Strictly regular inflection; the lemma survives as a substring."""
    if is_placeholder(lemma):
        return _inflect_token(lemma, tense, subject)
    head, rest = _head_rest(lemma)
    ed = head + ("d" if head.endswith("e") else "ed")
    ing = (head + head[-1] if _doubles_final(head) else head) + "ing"
    if tense == "past":
        return ed + rest
    if tense == "present":
        s = subject.lower()
        if s == "i" or s in PLURAL_SUBJECTS:
            return lemma
        return head + "s" + rest
    if tense == "present_continuous":
        return f"{_be(subject)} {ing}{rest}"
    if tense == "past_continuous":
        return f"{_be(subject, past=True)} {ing}{rest}"
    if tense == "future":
        return f"will {lemma}"
    if tense == "future_going_to":
        return f"{_be(subject)} going to {lemma}"
    if tense == "present_perfect":
        return f"{_have(subject)} {ed}{rest}"
    raise ValueError(f"unknown tense {tense!r}")


def _inflect_token(token: str, tense: str, subject: str) -> str:
    """Inflection around a bracketed placeholder token, e.g. "[VERB]-ing"."""
    if tense == "past":
        return f"{token}-ed"
    if tense == "present":
        return f"{token}-s"
    if tense == "present_continuous":
        return f"{_be(subject)} {token}-ing"
    if tense == "past_continuous":
        return f"{_be(subject, past=True)} {token}-ing"
    if tense == "future":
        return f"will {token}"
    if tense == "future_going_to":
        return f"{_be(subject)} going to {token}"
    if tense == "present_perfect":
        return f"{_have(subject)} {token}-ed"
    raise ValueError(f"unknown tense {tense!r}")


def singularize(token: str) -> str:
    if token.endswith("ies") and len(token) > 4:
        return token[:-3] + "y"
    for suffix in ("ches", "shes", "sses", "xes", "zes"):
        if token.endswith(suffix):
            return token[:-2]
    if token.endswith("s") and not token.endswith("ss") and len(token) > 3:
        return token[:-1]
    return token


def article(noun: str, seen: set[str]) -> str:
    if noun in seen:
        return "The"
    seen.add(noun)
    return "An" if noun[0].lower() in VOWELS else "A"


def subject_phrase(word: str, seen: set[str]) -> str:
    w = word.lower()
    if w == "i":
        return "I"
    if w in PRONOUN_SUBJECTS:
        return w
    if is_placeholder(word):
        return word
    return f"{article(w, seen)} {w}"


def object_phrase(word: str, seen: set[str]) -> str:
    w = word.lower()
    if w in PRONOUN_OBJECTS:
        return w
    if is_placeholder(word):
        return word
    return f"{article(w, seen).lower()} {w}"


def finish_sentence(words: list[str]) -> str:
    text = " ".join(w for w in words if w)
    for i, ch in enumerate(text):
        if ch.isalpha():
            text = text[:i] + ch.upper() + text[i + 1 :]
            break
    return text + "."


# ---------------------------------------------------------------------------
# structured-sentence rendering used by the mock chat backend


def render_structured(parts: list[dict]) -> str:
    """Deterministic English frame for a structured interlingua record."""
    subject = next(p for p in parts if p.get("part_of_speech") == "subject")
    verb = next(p for p in parts if p.get("part_of_speech") == "verb")
    obj = next((p for p in parts if p.get("part_of_speech") == "object"), None)

    def noun_phrase(part: dict) -> str:
        word = str(part.get("word", ""))
        positional = part.get("positional")
        plural = part.get("number") == "plural"
        if positional == "proximal":
            return f"{'these' if plural else 'this'} {word}"
        if positional in ("distal", "distant"):
            return f"{'those' if plural else 'that'} {word}"
        return word

    subject_np = noun_phrase(subject)
    subject_word = str(subject.get("word", ""))
    tense = TENSE_FROM_DISPLAY.get(str(verb.get("tense")), str(verb.get("tense")))
    head = subject_word if subject.get("positional") is None else "it"
    verb_phrase = inflect_regular(str(verb.get("word", "")), tense, head)
    words = [subject_np, verb_phrase]
    if obj is not None:
        words.append(noun_phrase(obj))
    return finish_sentence(words)


# ---------------------------------------------------------------------------
# heuristic clause segmentation used by the mock chat backend

_VERB_FORMS: dict[str, tuple[str, str]] = {}
for _lemma in KNOWN_VERBS:
    for _form, _kind in (
        (_lemma, "base"),
        (third_person(_lemma), "s"),
        (present_participle(_lemma), "ing"),
        (past_tense(_lemma), "past"),
        (past_participle(_lemma), "part"),
    ):
        _VERB_FORMS.setdefault(_form, (_lemma, _kind))
# ambiguous forms where past == base keep both readings
_PAST_EQUALS_BASE = {l for l in KNOWN_VERBS if past_tense(l) == l}

_AUX = {"am", "is", "are", "was", "were", "will", "has", "have"}


def _tokens(text: str) -> list[str]:
    return [t.lower() for t in re.findall(r"[A-Za-z']+", text)]


def _find_verb(tokens: list[str]) -> Optional[int]:
    for i, tok in enumerate(tokens):
        if tok in _AUX or tok in _VERB_FORMS:
            return i
    return None


def _parse_clause(tokens: list[str], prev: Optional[dict]) -> Optional[dict]:
    idx = _find_verb(tokens)
    if idx is None:
        return None
    subject = None
    for tok in tokens[:idx]:
        if tok in DETERMINERS or tok in STOP_WORDS:
            continue
        subject = tok if tok in PRONOUN_SUBJECTS else singularize(tok)
    lemma, tense = None, None

    i = idx
    tok = tokens[i]
    if tok == "will":
        tense = "future"
        for nxt in tokens[i + 1 :]:
            if nxt in _VERB_FORMS:
                lemma = _VERB_FORMS[nxt][0]
                break
            if nxt not in ("be", "not"):
                lemma = nxt
                break
        i += 2
    elif tok in ("am", "is", "are", "was", "were"):
        past = tok in ("was", "were")
        rest = tokens[i + 1 :]
        if rest[:2] == ["going", "to"] and len(rest) > 2:
            tense = "future"
            nxt = rest[2]
            lemma = _VERB_FORMS.get(nxt, (nxt, ""))[0]
            i += 4
        else:
            nxt = next((t for t in rest if t in _VERB_FORMS or t.endswith("ing")), None)
            if nxt is None:
                return None
            lemma = _VERB_FORMS.get(nxt, (_strip_ing(nxt), "ing"))[0]
            tense = "past_continuous" if past else "present_continuous"
            i += 1 + rest.index(nxt) + 1 - 1
            i = idx + 1 + rest.index(nxt) + 1
    elif tok in ("has", "have"):
        rest = tokens[i + 1 :]
        nxt = next((t for t in rest if t in _VERB_FORMS), None)
        if nxt is None:
            return None
        lemma = _VERB_FORMS[nxt][0]
        tense = "present_perfect"
        i = idx + 1 + rest.index(nxt) + 1
    else:
        lemma, kind = _VERB_FORMS[tok]
        if kind == "past":
            tense = "past"
        elif kind == "ing":
            # bare participle clause: "...and laughing" / "while watching TV"
            if prev is not None and prev["verb_tense"] in ("past", "past_continuous"):
                tense = "past_continuous"
            else:
                tense = "present_continuous"
        else:
            tense = "present"
            if subject is None and prev is not None and prev["verb_tense"] == "future":
                # "will migrate and return": the modal scopes over both verbs
                tense = "future"
            if lemma in _PAST_EQUALS_BASE and subject is not None:
                third = subject not in ("i", "you", "we", "they")
                if third:  # "Ron read." can only be past
                    tense = "past"
        i = idx + 1

    if subject is None and prev is not None:
        subject = prev["subject"].lower() if prev["subject"] != "I" else "i"
    if subject is None or lemma is None:
        return None

    obj = None
    for tok in tokens[i:]:
        if tok in STOP_WORDS:
            break
        if tok in DETERMINERS or tok in _AUX or tok.endswith("ly"):
            continue
        if tok in _VERB_FORMS and obj is None and tok not in PRONOUN_OBJECTS:
            continue
        obj = tok if tok in PRONOUN_OBJECTS else singularize(tok)
        break

    return {
        "subject": "I" if subject == "i" else subject,
        "verb": lemma,
        "verb_tense": tense,
        "object": obj,
    }


def _strip_ing(token: str) -> str:
    stem = token[:-3]
    if len(stem) > 2 and stem[-1] == stem[-2]:
        stem = stem[:-1]
    return stem


def naive_segment(text: str) -> list[dict]:
    """Split English input into simple SV / SVO records.

    Intentionally small: handles coordination ("and", "while", commas),
    compound subjects, and subject/tense inheritance for bare clauses.
    """
    parts = [p for p in re.split(r",|\band\b|\bwhile\b", text.lower()) if p.strip()]
    simples: list[dict] = []
    pending_subjects: list[str] = []
    prev: Optional[dict] = None
    for part in parts:
        tokens = _tokens(part)
        if not tokens:
            continue
        clause = _parse_clause(tokens, prev)
        if clause is None:
            if prev is None:
                subject = None
                for tok in tokens:
                    if tok not in DETERMINERS and tok not in STOP_WORDS:
                        subject = tok
                if subject:
                    pending_subjects.append("I" if subject == "i" else subject)
            continue
        if pending_subjects:
            for subj in pending_subjects:
                simples.append(dict(clause, subject=subj))
            pending_subjects = []
        simples.append(clause)
        prev = clause
    return simples
