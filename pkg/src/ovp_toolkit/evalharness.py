"""Semantic-similarity evaluation: embeddings backends, normalized cosine,
ranking metrics (average displacement, rank-biased overlap), baseline
statistics over unrelated sentence pairs, and the report tables."""
from __future__ import annotations

import hashlib
import json
import os
import re
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Protocol, Sequence

import httpx
import numpy as np

from .en2ovp import TranslationRecord, render_simple_english
from .llm import BackendConfig, BackendError, TransportError

SENTENCE_TYPES = (
    "subject-verb",
    "subject-verb-object",
    "two-verb",
    "two-clause",
    "complex",
)


class DegenerateInputError(ValueError):
    """A zero vector (or similar) made the metric undefined."""


class EmbeddingsBackend(Protocol):
    model_name: str

    def embed(self, texts: list[str]) -> list[np.ndarray]: ...


@dataclass
class MockEmbeddingsBackend:
    """Deterministic hashed bag-of-words embeddings for offline use.

    Each token hashes to a signed coordinate; shared words move texts
    closer, so scores correlate loosely with lexical overlap.
    """

    dim: int = 256
    model_name: str = "mock-embeddings"

    def _vector(self, text: str) -> np.ndarray:
        v = np.zeros(self.dim)
        for token in re.findall(r"[\w']+", text.lower()):
            digest = hashlib.md5(token.encode("utf-8")).digest()
            idx = int.from_bytes(digest[:4], "big") % self.dim
            sign = 1.0 if digest[4] % 2 == 0 else -1.0
            v[idx] += sign
        if not v.any():
            # empty/punctuation-only text still gets a stable nonzero vector
            v[0] = 1.0
        return v

    def embed(self, texts: list[str]) -> list[np.ndarray]:
        if not texts:
            raise ValueError("texts must be non-empty")
        return [self._vector(t) for t in texts]


@dataclass
class HttpEmbeddingsBackend:
    """Embeddings over HTTP using the standard input/model JSON body."""

    config: BackendConfig = field(
        default_factory=lambda: BackendConfig(model_name="all-MiniLM-L6-v2")
    )
    batch_size: int = 64
    _sleep: Callable[[float], None] = time.sleep

    @property
    def model_name(self) -> str:
        return self.config.model_name

    def _post(self, batch: list[str]) -> list[np.ndarray]:
        body = {"model": self.config.model_name, "input": batch}
        headers = {}
        api_key = os.environ.get(self.config.api_key_source, "")
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        url = self.config.base_url.rstrip("/") + "/embeddings"
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
            data = sorted(resp.json()["data"], key=lambda d: d.get("index", 0))
            return [np.asarray(d["embedding"], dtype=float) for d in data]
        if isinstance(last_exc, BackendError):
            raise last_exc
        raise TransportError(f"embeddings request failed after retries: {last_exc}")

    def embed(self, texts: list[str]) -> list[np.ndarray]:
        if not texts:
            raise ValueError("texts must be non-empty")
        out: list[np.ndarray] = []
        for start in range(0, len(texts), self.batch_size):
            out.extend(self._post(texts[start : start + self.batch_size]))
        return out


def embed(texts: list[str], backend: EmbeddingsBackend) -> list[np.ndarray]:
    return backend.embed(texts)


def normalized_cosine(a, b) -> float:
    """Cosine similarity mapped affinely onto [0, 1]."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise DegenerateInputError("zero vector has no direction")
    cos = float(np.dot(a, b) / (na * nb))
    return (min(max(cos, -1.0), 1.0) + 1.0) / 2.0


def sentence_set_similarity(
    reference: str, sentences: Sequence[str], backend: EmbeddingsBackend
) -> float:
    """Similarity between a reference text and a set joined into one passage."""
    if not sentences:
        raise ValueError("sentence set must be non-empty")
    ref_vec, set_vec = backend.embed([reference, " ".join(sentences)])
    return normalized_cosine(ref_vec, set_vec)


def average_displacement(target_order: Sequence, computed_order: Sequence) -> float:
    if len(set(target_order)) != len(target_order):
        raise ValueError("target order contains duplicates")
    if set(target_order) != set(computed_order) or len(target_order) != len(
        computed_order
    ):
        raise ValueError("orders must contain the same elements")
    pos = {item: i for i, item in enumerate(computed_order)}
    return float(
        np.mean([abs(i - pos[item]) for i, item in enumerate(target_order)])
    )


def rbo(order_a: Sequence, order_b: Sequence, p: float = 0.9) -> float:
    """Extrapolated rank-biased overlap for two same-length rankings."""
    if not 0.0 < p < 1.0:
        raise ValueError("p must be in (0, 1)")
    if len(order_a) != len(order_b):
        raise ValueError("rankings must have equal length")
    if len(set(order_a)) != len(order_a) or len(set(order_b)) != len(order_b):
        raise ValueError("rankings must not contain duplicates")
    k = len(order_a)
    if k == 0:
        raise ValueError("rankings must be non-empty")
    seen_a: set = set()
    seen_b: set = set()
    overlap = 0
    weighted = 0.0
    for d in range(1, k + 1):
        item_a, item_b = order_a[d - 1], order_b[d - 1]
        if item_a == item_b:
            overlap += 1
        else:
            overlap += (item_a in seen_b) + (item_b in seen_a)
        seen_a.add(item_a)
        seen_b.add(item_b)
        weighted += (overlap / d) * p**d
    return ((1 - p) / p) * weighted + (overlap / k) * p**k


# ---------------------------------------------------------------------------
# ranking benchmark


@dataclass(frozen=True)
class RankingCase:
    base: str
    candidates: tuple[str, ...]  # ground truth, most to least similar

    def __post_init__(self) -> None:
        if len(self.candidates) < 2:
            raise ValueError("a ranking case needs at least two candidates")


@dataclass(frozen=True)
class RankingBenchmark:
    cases: tuple[RankingCase, ...]

    @classmethod
    def from_dict(cls, data: dict) -> "RankingBenchmark":
        return cls(
            tuple(
                RankingCase(c["base"], tuple(c["candidates"]))
                for c in data["cases"]
            )
        )

    @classmethod
    def from_path(cls, path) -> "RankingBenchmark":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def load_benchmark() -> RankingBenchmark:
    """The bundled ranking benchmark (12 base sentences, 10 candidates each)."""
    from importlib.resources import files

    data = files("ovp_toolkit.data").joinpath("ranking_benchmark.json")
    return RankingBenchmark.from_dict(json.loads(data.read_text("utf-8")))


class SimilarityScorer(Protocol):
    model_name: str

    def scores(self, base: str, candidates: Sequence[str]) -> list[float]: ...


@dataclass
class EmbeddingScorer:
    """Scores candidates by normalized cosine against the base sentence."""

    backend: EmbeddingsBackend

    @property
    def model_name(self) -> str:
        return self.backend.model_name

    def scores(self, base: str, candidates: Sequence[str]) -> list[float]:
        vectors = self.backend.embed([base] + list(candidates))
        return [normalized_cosine(vectors[0], v) for v in vectors[1:]]


@dataclass
class GroundTruthScorer:
    """Perfect oracle: scores decrease monotonically in ground-truth order."""

    benchmark: RankingBenchmark
    model_name: str = "oracle"

    def scores(self, base: str, candidates: Sequence[str]) -> list[float]:
        case = next((c for c in self.benchmark.cases if c.base == base), None)
        if case is None:
            raise ValueError(f"unknown base sentence {base!r}")
        rank = {text: i for i, text in enumerate(case.candidates)}
        return [1.0 - rank[c] / len(case.candidates) for c in candidates]


@dataclass(frozen=True)
class RankingReport:
    model_name: str
    displacement_mean: float
    displacement_std: float
    rbo_mean: float
    rbo_std: float
    per_case: tuple[dict, ...] = ()

    def to_table(self) -> str:
        lines = ["model\tdisplacement_mean\tdisplacement_std\trbo_mean\trbo_std"]
        lines.append(
            f"{self.model_name}\t{self.displacement_mean:.3f}\t"
            f"{self.displacement_std:.3f}\t{self.rbo_mean:.3f}\t{self.rbo_std:.3f}"
        )
        return "\n".join(lines)


def evaluate_embedding_model(
    benchmark: RankingBenchmark, scorer: SimilarityScorer, p: float = 0.9
) -> RankingReport:
    """Rank every case's candidates by similarity and compare to ground truth.

    Ties break by candidate index (stable sort), so results are
    deterministic for any scorer.
    """
    displacements: list[float] = []
    rbos: list[float] = []
    per_case: list[dict] = []
    for case in benchmark.cases:
        scores = scorer.scores(case.base, case.candidates)
        computed = [
            case.candidates[i]
            for i in sorted(
                range(len(case.candidates)), key=lambda i: (-scores[i], i)
            )
        ]
        d = average_displacement(case.candidates, computed)
        r = rbo(list(case.candidates), computed, p)
        displacements.append(d)
        rbos.append(r)
        per_case.append({"base": case.base, "displacement": d, "rbo": r})
    return RankingReport(
        model_name=scorer.model_name,
        displacement_mean=float(np.mean(displacements)),
        displacement_std=float(np.std(displacements)),
        rbo_mean=float(np.mean(rbos)),
        rbo_std=float(np.std(rbos)),
        per_case=tuple(per_case),
    )


# ---------------------------------------------------------------------------
# baseline over unrelated sentence pairs


@dataclass(frozen=True)
class BaselineStats:
    mean: float
    std: float
    pair_count: int
    bin_edges: tuple[float, ...]
    bin_counts: tuple[int, ...]

    @property
    def threshold(self) -> float:
        """Relatedness cutoff: scores above mean + 3 std suggest relation."""
        return self.mean + 3.0 * self.std

    def to_report(self) -> str:
        lines = [
            f"pairs\t{self.pair_count}",
            f"mean\t{self.mean:.3f}",
            f"std\t{self.std:.3f}",
            f"threshold\t{self.threshold:.3f}",
            "histogram:",
        ]
        for lo, hi, count in zip(self.bin_edges, self.bin_edges[1:], self.bin_counts):
            lines.append(f"{lo:.3f}\t{hi:.3f}\t{count}")
        return "\n".join(lines)


def baseline(
    dataset: Sequence[str], backend: EmbeddingsBackend, bins: int = 20
) -> BaselineStats:
    """Similarity statistics over all unordered distinct sentence pairs."""
    if len(dataset) < 2:
        raise ValueError("baseline needs at least two sentences")
    vectors = backend.embed(list(dataset))
    scores = [
        normalized_cosine(vectors[i], vectors[j])
        for i in range(len(vectors))
        for j in range(i + 1, len(vectors))
    ]
    counts, edges = np.histogram(scores, bins=bins, range=(0.0, 1.0))
    return BaselineStats(
        mean=float(np.mean(scores)),
        std=float(np.std(scores)),
        pair_count=len(scores),
        bin_edges=tuple(float(e) for e in edges),
        bin_counts=tuple(int(c) for c in counts),
    )


# ---------------------------------------------------------------------------
# translation scoring and reporting


def score_record(
    record: TranslationRecord, backend: EmbeddingsBackend
) -> TranslationRecord:
    """Attach the three semantic-similarity scores to a translation record."""
    if not (record.simples and record.comparators and record.backwards):
        raise ValueError("record lists are not populated")
    seen: set[str] = set()
    simple_english = [render_simple_english(s, seen) for s in record.simples]
    record.scores = {
        "simple": sentence_set_similarity(record.input, simple_english, backend),
        "comparator": sentence_set_similarity(
            record.input, record.comparators, backend
        ),
        "backwards": sentence_set_similarity(
            record.input, record.backwards, backend
        ),
    }
    return record


def summarize_by_type(
    tagged_records: Sequence[tuple[str, TranslationRecord]],
) -> str:
    """Mean similarity per (model, sentence type), as a delimited table.

    Each item is (sentence_type, scored record); the mean pools a record's
    simple, comparator and backwards scores.
    """
    groups: dict[tuple[str, str], list[float]] = {}
    for sentence_type, record in tagged_records:
        if sentence_type not in SENTENCE_TYPES:
            raise ValueError(f"unknown sentence type {sentence_type!r}")
        if not record.scores:
            raise ValueError("record is unscored")
        key = (record.model_name, sentence_type)
        groups.setdefault(key, []).extend(
            record.scores[k] for k in ("simple", "comparator", "backwards")
        )
    lines = ["model\ttype\tmean_sim"]
    for model in sorted({m for m, _ in groups}):
        # rows in the canonical type order per model
        for sentence_type in SENTENCE_TYPES:
            values = groups.get((model, sentence_type))
            if values is None:
                continue
            lines.append(f"{model}\t{sentence_type}\t{np.mean(values):.3f}")
    return "\n".join(lines)
