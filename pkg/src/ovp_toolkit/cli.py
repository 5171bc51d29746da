"""Command-line front door for the pipelines and the evaluation harness.

Exit codes: 0 success, 2 usage, 3 bad input, 4 backend failure, 5 internal.
"""
from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from . import builder, en2ovp, evalharness, llm, ovp2en
from .config import AppConfig, make_chat_backend, make_embeddings_backend
from .grammar import CORPUS_POLICY, render, selections_from_ids, validate
from .lexicon import load_lexicon

EXIT_INPUT = 3
EXIT_BACKEND = 4
EXIT_INTERNAL = 5

_INPUT_ERRORS = (
    ValueError,
    KeyError,
    json.JSONDecodeError,
    FileNotFoundError,
    en2ovp.SegmentationError,
    ovp2en.EncodeError,
    builder.ConstraintError,
)


def _classified(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (llm.TransportError, llm.BackendError) as exc:
            click.echo(f"backend error: {exc}", err=True)
            sys.exit(EXIT_BACKEND)
        except _INPUT_ERRORS as exc:
            click.echo(f"input error: {exc}", err=True)
            sys.exit(EXIT_INPUT)
        except click.exceptions.Exit:
            raise
        except Exception as exc:  # pragma: no cover - defensive
            click.echo(f"internal error: {exc}", err=True)
            sys.exit(EXIT_INTERNAL)

    return wrapper


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--backend", type=click.Choice(["mock", "live"]), default=None)
@click.pass_context
def main(ctx, config_path, backend):
    """No-resource machine-translation toolkit for Owens Valley Paiute."""
    config = AppConfig.from_file(config_path) if config_path else AppConfig()
    if backend:
        config.chat_backend = backend
        config.embeddings_backend = backend
    ctx.obj = config


@main.command("random")
@click.option("--count", default=1, show_default=True)
@click.option("--seed", default=0, show_default=True)
@_classified
def random_cmd(count, seed):
    """Generate random valid sentences, one JSON record per line."""
    if count < 1:
        raise ValueError("--count must be at least 1")
    lexicon = load_lexicon()
    for i in range(count):
        selections = builder.random_sentence(lexicon, seed + i)
        click.echo(
            json.dumps(
                {
                    "seed": seed + i,
                    "selections": selections.ids(),
                    "surface": render(selections, CORPUS_POLICY),
                },
                ensure_ascii=False,
            )
        )


@main.command("ovp2en")
@click.option(
    "--selections",
    "selections_path",
    type=click.Path(exists=True),
    required=True,
    help="JSON file: slot-to-lexeme-id object, or a list of them.",
)
@click.pass_obj
@_classified
def ovp2en_cmd(config, selections_path):
    """Translate selected OVP sentences to English."""
    lexicon = load_lexicon()
    chat = make_chat_backend(config)
    data = json.loads(Path(selections_path).read_text("utf-8"))
    items = data if isinstance(data, list) else [data]
    for ids in items:
        selections = selections_from_ids(lexicon, ids)
        verdict = validate(selections)
        if not verdict.complete:
            raise ValueError(
                f"selections are {verdict.status}: "
                f"missing={verdict.missing} problems={verdict.problems}"
            )
        result = ovp2en.translate_ovp(
            selections, chat, policy=CORPUS_POLICY,
            continuous_past=config.continuous_past,
        )
        click.echo(
            json.dumps(
                {"surface": result.surface, "english": result.english},
                ensure_ascii=False,
            )
        )


@main.command("en2ovp")
@click.argument("text")
@click.option("--score", is_flag=True)
@click.pass_obj
@_classified
def en2ovp_cmd(config, text, score):
    """Translate English TEXT to OVP; prints the full record as JSON."""
    lexicon = load_lexicon()
    chat = make_chat_backend(config)
    record = en2ovp.translate_english(text, chat, lexicon)
    if score:
        embeddings = make_embeddings_backend(config)
        if embeddings is None:
            raise ValueError("scoring requested but no embeddings backend configured")
        record = evalharness.score_record(record, embeddings)
    click.echo(record.to_json())


@main.group("eval")
def eval_group():
    """Evaluation harness commands."""


@eval_group.command("rankings")
@click.option("--benchmark", "benchmark_path", type=click.Path(exists=True), default=None)
@click.option(
    "--scorer",
    type=click.Choice(["embedding", "oracle"]),
    default="embedding",
    show_default=True,
    help="'oracle' scores by ground truth (sanity check: displacement 0, RBO 1).",
)
@click.option("--rbo-p", default=0.9, show_default=True)
@click.pass_obj
@_classified
def eval_rankings(config, benchmark_path, scorer, rbo_p):
    """Evaluate an embeddings model on the ranking benchmark."""
    benchmark = (
        evalharness.RankingBenchmark.from_path(benchmark_path)
        if benchmark_path
        else evalharness.load_benchmark()
    )
    if scorer == "oracle":
        sim = evalharness.GroundTruthScorer(benchmark)
    else:
        backend = make_embeddings_backend(config)
        if backend is None:
            raise ValueError("no embeddings backend configured")
        sim = evalharness.EmbeddingScorer(backend)
    report = evalharness.evaluate_embedding_model(benchmark, sim, p=rbo_p)
    click.echo(report.to_table())


def _load_dataset(path) -> list[str]:
    text = Path(path).read_text("utf-8")
    if str(path).endswith(".json"):
        data = json.loads(text)
        if isinstance(data, dict):
            sentences = data.get("sentences", data)
            if isinstance(sentences, dict):
                return [s for group in sentences.values() for s in group]
            return list(sentences)
        return list(data)
    return [line.strip() for line in text.splitlines() if line.strip()]


@eval_group.command("baseline")
@click.option("--dataset", "dataset_path", type=click.Path(exists=True), required=True)
@click.pass_obj
@_classified
def eval_baseline(config, dataset_path):
    """Similarity baseline over all sentence pairs in a dataset."""
    backend = make_embeddings_backend(config)
    if backend is None:
        raise ValueError("no embeddings backend configured")
    stats = evalharness.baseline(_load_dataset(dataset_path), backend)
    click.echo(stats.to_report())


@main.group("report")
def report_group():
    """Reporting commands."""


@report_group.command("by-type")
@click.option("--records", "records_path", type=click.Path(exists=True), required=True)
@_classified
def report_by_type(records_path):
    """Mean similarity per model and sentence type from tagged record lines.

    Input is line-delimited JSON: each line a TranslationRecord dict with an
    extra "type" field naming one of the five sentence types.
    """
    tagged = []
    with open(records_path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            data = json.loads(line)
            sentence_type = data.pop("type", None)
            if sentence_type is None:
                raise ValueError("record line is missing its 'type' tag")
            tagged.append((sentence_type, en2ovp.TranslationRecord.from_dict(data)))
    click.echo(evalharness.summarize_by_type(tagged))


@main.command("serve")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.pass_obj
@_classified
def serve(config, config_path):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    if config_path:
        config = AppConfig.from_file(config_path)
    uvicorn.run(
        create_app(config), host=config.listen_host, port=config.listen_port
    )


if __name__ == "__main__":
    main()
