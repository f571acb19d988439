"""Batch command line: ``python -m app <subcommand> ...``.

Exit codes: 0 success, 1 usage or config error, 2 runtime failure, 3 CI gate
violation. Errors go to stderr prefixed with ``error_code:``.
"""

import argparse
import dataclasses
import json
import logging
import sys
from pathlib import Path
from typing import Callable, List, NoReturn, Optional

from pydantic import ValidationError

from app.core.config import Config, load_config, normalize_rules, set_config, with_overrides
from app.core.errors import ToolkitError, UsageError, describe
from app.core.logs import configure_logging
from app.core.rules import RuleId
from app.core.source import SourceUnit
from app.core.transforms import generate_candidates
from app.models.schemas import AttackRecordOut, AugmentedRecord, CorpusRecord, EmbeddingRecord, UnitIn, VariantRecord
from app.services.attack_service import AttackOptions, AttackService, adversarial_training_rows
from app.services.augment_service import AugmentOptions, AugmentService, merged_rows, project_groups, write_projection
from app.services.curate_service import CurateService, corpus_stats, split
from app.services.embedder_service import EmbedderService
from app.services.eval_service import EvalService, check_gate
from app.services.exec_service import ExecService
from app.services.translator_service import TranslatorService, build_translator
from app.storage.jsonl import load_suites, read_json, read_jsonl, read_models, write_json, write_jsonl
from app.storage.memory import store

logger = logging.getLogger("app.cli")


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(1, f"error_code: usage {message}\n")


def _rules(value: str) -> str:
    try:
        return normalize_rules(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _positive(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return number


def _configured(args: argparse.Namespace) -> Config:
    overrides = {}
    for name in ("seed", "parallelism", "rules"):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    config = with_overrides(load_config(args.config), **overrides)
    set_config(config)
    return config


def cmd_curate(args: argparse.Namespace, config: Config) -> None:
    rows = read_jsonl(args.input)
    kept, report = CurateService(config.curation, config.parallelism).curate(rows)
    write_jsonl(args.out, (record.model_dump(mode="json") for record in kept))
    if args.report:
        write_json(args.report, report.model_dump(mode="json"))


def cmd_split(args: argparse.Namespace, config: Config) -> None:
    records = read_models(args.input, CorpusRecord)
    parts = split(records, args.train, args.valid, args.test, config.seed)
    for name, part in parts.items():
        write_jsonl(Path(args.out_dir) / f"{name}.jsonl", (record.model_dump(mode="json") for record in part))


def cmd_stats(args: argparse.Namespace, config: Config) -> None:
    stats = {lang: item.model_dump(mode="json") for lang, item in corpus_stats(read_models(args.input, CorpusRecord)).items()}
    if args.out:
        write_json(args.out, stats)
    else:
        print(json.dumps(stats, indent=2))


def cmd_variants(args: argparse.Namespace, config: Config) -> None:
    try:
        unit_in = UnitIn.model_validate(read_json(args.input))
    except ValidationError as exc:
        raise UsageError(f"{args.input}: {exc.errors()[0]['msg']}") from exc
    unit = SourceUnit(unit_in.id, unit_in.lang, unit_in.text)
    candidates = generate_candidates(unit, [RuleId(letter) for letter in config.rules], config.seed)
    if not candidates:
        logger.warning("unit %s has no applicable transformation sites", unit.id)
    rows = (
        VariantRecord(
            id=f"{unit.id}/{index}",
            parent_id=unit.id,
            plan=[rule.value for rule in variant.plan.sequence],
            sequence=[rule.value for rule in variant.sequence.sequence],
            text=variant.text,
        ).model_dump(mode="json")
        for index, variant in enumerate(candidates)
    )
    write_jsonl(args.out, rows)


def cmd_attack(args: argparse.Namespace, config: Config) -> None:
    samples = read_models(args.test, CorpusRecord)
    suites = load_suites(args.suites)
    options = AttackOptions.from_config(config)
    if args.adv_train_out and not options.verify_g:
        # exported training pairs must keep the original's test behaviour
        logger.info("--adv-train-out given, enabling the consistency check")
        options = dataclasses.replace(options, verify_g=True)
    service = AttackService(TranslatorService(build_translator(config.translator), store), ExecService(config, store), store)
    result = service.attack_dataset(samples, suites, options)
    write_jsonl(args.out, (record.to_row() for record in result.records))
    if args.summary:
        write_json(args.summary, result.summary.model_dump(mode="json"))
    if args.adv_train_out:
        write_jsonl(args.adv_train_out, adversarial_training_rows(result.records, samples))


def cmd_eval(args: argparse.Namespace, config: Config) -> None:
    records = read_models(args.records, AttackRecordOut)
    refs = read_models(args.refs, CorpusRecord)
    report = EvalService(ExecService(config, store)).evaluate(records, refs)
    write_json(args.out, report.model_dump(mode="json"))
    check_gate(report, args.fail_if_rd_above)


def cmd_augment(args: argparse.Namespace, config: Config) -> None:
    train = read_models(args.train, CorpusRecord)
    options = AugmentOptions.from_config(config)
    suites = None
    if options.verify_with_tests:
        suites_dir = args.suites or config.augment.suites_dir
        if not suites_dir:
            raise UsageError("augment.verify_with_tests needs --suites or augment.suites_dir")
        suites = load_suites(suites_dir)
    with EmbedderService(config.embedder) as embedder:
        service = AugmentService(embedder, ExecService(config, store))
        augmented, report = service.build_augmented_dataset(train, options, suites)
    write_jsonl(args.out, (pair.to_row() for pair in augmented))
    if args.report:
        write_json(args.report, report.model_dump(mode="json"))
    if args.merged_out:
        write_jsonl(args.merged_out, merged_rows(train, augmented))


def cmd_embed(args: argparse.Namespace, config: Config) -> None:
    train = read_models(args.train, CorpusRecord)
    augmented = read_models(args.augmented, AugmentedRecord)
    with EmbedderService(config.embedder) as embedder:
        rows = AugmentService(embedder).embed_groups(train, augmented, args.side)
    write_jsonl(args.out, (row.model_dump(mode="json") for row in rows))


def cmd_pca(args: argparse.Namespace, config: Config) -> None:
    rows = read_models(args.embeddings, EmbeddingRecord)
    projection = project_groups(rows)
    write_projection(args.out, rows, projection)
    if projection.explained_variance_ratio is not None:
        logger.info("explained variance ratio: %s", ", ".join(f"{r:.4f}" for r in projection.explained_variance_ratio))


def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML config file (default: $COTR_CONFIG, then built-in defaults)")
    common.add_argument("-v", "--verbose", action="count", default=0, help="more log output (repeatable)")
    common.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")

    seeded = ArgumentParser(add_help=False)
    seeded.add_argument("--seed", type=int, help="override the configured seed")
    seeded.add_argument("--parallelism", type=_positive, help="override the configured worker count")
    seeded.add_argument("--rules", type=_rules, help="enabled rules, any of LEPC")

    parser = ArgumentParser(prog="cotr", description="Robustness toolkit for code translation models.")
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def command(name: str, handler: Callable, help_text: str, extra: Optional[List] = None) -> ArgumentParser:
        sub = commands.add_parser(name, parents=[common] + (extra or []), help=help_text, description=help_text)
        sub.set_defaults(handler=handler)
        return sub

    sub = command("curate", cmd_curate, "filter a raw parallel corpus")
    sub.add_argument("--in", dest="input", required=True, help="raw corpus JSONL")
    sub.add_argument("--out", required=True, help="curated corpus JSONL")
    sub.add_argument("--report", help="curation report JSON")
    sub.add_argument("--parallelism", type=_positive, help="override the configured worker count")

    sub = command("split", cmd_split, "deterministic train/valid/test split")
    sub.add_argument("--in", dest="input", required=True, help="curated corpus JSONL")
    sub.add_argument("--train", type=int, required=True, help="training pairs")
    sub.add_argument("--valid", type=int, required=True, help="validation pairs")
    sub.add_argument("--test", type=int, required=True, help="test pairs")
    sub.add_argument("--seed", type=int, help="override the configured seed")
    sub.add_argument("--out-dir", default=".", help="directory for train/valid/test.jsonl")

    sub = command("stats", cmd_stats, "token length statistics per language")
    sub.add_argument("--in", dest="input", required=True, help="corpus JSONL")
    sub.add_argument("--out", help="stats JSON (default: stdout)")

    sub = command("variants", cmd_variants, "candidate variants of one unit", [seeded])
    sub.add_argument("--in", dest="input", required=True, help="unit JSON with id, lang and text")
    sub.add_argument("--out", required=True, help="variants JSONL")

    sub = command("attack", cmd_attack, "search adversarial variants against the configured translator", [seeded])
    sub.add_argument("--test", required=True, help="test corpus JSONL")
    sub.add_argument("--suites", required=True, help="directory of test suite JSON files")
    sub.add_argument("--out", required=True, help="adversarial records JSONL")
    sub.add_argument("--summary", help="attack summary JSON")
    sub.add_argument("--adv-train-out", help="adversarial pairs in corpus JSONL format")

    sub = command("eval", cmd_eval, "score attack records against references")
    sub.add_argument("--records", required=True, help="attack records JSONL")
    sub.add_argument("--refs", required=True, help="reference corpus JSONL")
    sub.add_argument("--out", required=True, help="evaluation report JSON")
    sub.add_argument("--fail-if-rd-above", type=float, help="exit 3 when RD@1 exceeds this value")

    sub = command("augment", cmd_augment, "build the distance-maximizing augmented corpus", [seeded])
    sub.add_argument("--train", required=True, help="training corpus JSONL")
    sub.add_argument("--out", required=True, help="augmented pairs JSONL")
    sub.add_argument("--report", help="augmentation report JSON")
    sub.add_argument("--merged-out", help="training plus augmented pairs in corpus JSONL format")
    sub.add_argument("--suites", help="test suites for augment.verify_with_tests")

    sub = command("embed", cmd_embed, "embed original and augmented code for projection")
    sub.add_argument("--train", required=True, help="training corpus JSONL")
    sub.add_argument("--augmented", required=True, help="augmented pairs JSONL")
    sub.add_argument("--side", choices=["source", "target"], default="source", help="which side to embed")
    sub.add_argument("--out", required=True, help="groups JSONL")

    sub = command("pca", cmd_pca, "project embedding groups onto two principal components")
    sub.add_argument("--embeddings", required=True, help="groups JSONL")
    sub.add_argument("--out", required=True, help="projection CSV")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    configure_logging(-1 if args.quiet else args.verbose)
    store.clear()
    try:
        config = _configured(args)
        args.handler(args, config)
    except ToolkitError as exc:
        print(describe(exc, args.command), file=sys.stderr)
        return exc.exit_code
    except Exception as exc:  # noqa: BLE001
        logger.debug("unhandled failure", exc_info=True)
        print(f"error_code: internal {args.command}: {exc}", file=sys.stderr)
        return 2
    return 0

