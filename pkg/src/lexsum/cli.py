"""Command line front end: ``lexsum summarize|evaluate|inspect-chains``.

Exit status is 0 on success, 1 on usage errors and 2 on data errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .errors import LexsumError
from .evaluate import evaluate_corpus
from .summarizer import SummarizerConfig, analyze, summarize
from .text import split_sentences
from .wiki import AbstractProvider
from .wordnet import RELATIONS, load_wordnet

SUMMARY_SCHEMA = "lexsum.summary-report/1"
CHAINS_SCHEMA = "lexsum.chains-report/1"

ENV_WORDNET = "LEXSUM_WORDNET_DIR"
ENV_WIKI = "LEXSUM_WIKI_ABSTRACTS"

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _relations(value: str) -> tuple[str, ...]:
    names = tuple(v.strip() for v in value.split(",") if v.strip())
    bad = [n for n in names if n not in RELATIONS]
    if not names or bad:
        raise argparse.ArgumentTypeError(
            f"unknown relation(s) {', '.join(bad) or value!r}; choose from {', '.join(sorted(RELATIONS))}"
        )
    return names


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    kb = common.add_argument_group("knowledge base")
    kb.add_argument("--wordnet-dir", default=os.environ.get(ENV_WORDNET),
                    help=f"WordNet Prolog record directory (env {ENV_WORDNET})")
    kb.add_argument("--wiki-abstracts", default=os.environ.get(ENV_WIKI),
                    help=f"MediaWiki XML export for proper names (env {ENV_WIKI})")
    cfg = common.add_argument_group("summarizer")
    cfg.add_argument("--depth", type=int, default=3, help="sense tree depth (default 3)")
    cfg.add_argument("--lambda", dest="lam", type=int, default=5,
                     help="gloss containment bonus (default 5)")
    cfg.add_argument("--lesk-threshold", type=int, default=2,
                     help="minimum score to extend a chain, exclusive (default 2)")
    cfg.add_argument("--cluster-threshold", type=float, default=0.5,
                     help="cosine below which clustering stops (default 0.5)")
    cfg.add_argument("--summary-words", type=int, default=100, help="word budget (default 100)")
    cfg.add_argument("--relations", type=_relations, default=("hypernym",),
                     help="comma separated tree relations (default hypernym)")
    cfg.add_argument("--linkage", choices=("centroid", "average"), default="centroid")
    cfg.add_argument("--no-gloss-fallback", action="store_true",
                     help="resolve unconnected pairs by first sense only")
    common.add_argument("--format", choices=("text", "json"), default="text",
                        help="plain text or structured JSON report")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="lexsum", description="Lexical-chain extractive summarizer")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("summarize", parents=[common], help="summarize one document")
    p.add_argument("--input", "-i", required=True, help="plain-text document ('-' for stdin)")
    p = sub.add_parser("evaluate", parents=[common], help="score summaries of a corpus")
    p.add_argument("--manifest", "-m", required=True, help="JSON Lines corpus manifest")
    p.add_argument("--jobs", "-j", type=int, default=1)
    p.add_argument("--rouge-stem", action="store_true", help="Porter-stem ROUGE tokens")
    p.add_argument("--rouge-drop-stopwords", action="store_true")
    p = sub.add_parser("inspect-chains", parents=[common], help="dump chains, clusters, sequences")
    p.add_argument("--input", "-i", required=True, help="plain-text document ('-' for stdin)")
    return parser


def _config(args) -> SummarizerConfig:
    return SummarizerConfig(
        depth=args.depth,
        lam=args.lam,
        threshold_t=args.lesk_threshold,
        cluster_threshold=args.cluster_threshold,
        summary_words=args.summary_words,
        relations=args.relations,
        gloss_fallback=not args.no_gloss_fallback,
        linkage=args.linkage,
    )


def _validate(args) -> None:
    if not args.wordnet_dir:
        raise UsageError(f"--wordnet-dir is required (or set {ENV_WORDNET})")
    if not Path(args.wordnet_dir).is_dir():
        raise UsageError(f"--wordnet-dir: not a directory: {args.wordnet_dir}")
    if args.wiki_abstracts and not Path(args.wiki_abstracts).is_file():
        raise UsageError(f"--wiki-abstracts: no such file: {args.wiki_abstracts}")
    for name in ("input", "manifest"):
        value = getattr(args, name, None)
        if value and value != "-" and not Path(value).is_file():
            raise UsageError(f"--{name}: no such file: {value}")
    if getattr(args, "jobs", 1) < 1:
        raise UsageError("--jobs must be >= 1")


def _read_input(value: str) -> tuple[str, str]:
    if value == "-":
        return sys.stdin.read(), "stdin"
    path = Path(value)
    return path.read_text(encoding="utf-8"), path.stem


def _load(args, text: str | None = None):
    abstracts = None
    if args.wiki_abstracts:
        titles = None
        if text is not None:
            titles = {w for w in text.replace("'", " ").split() if w[:1].isupper()}
            titles = {t.strip(".,;:!?\"()[]") for t in titles}
        abstracts = AbstractProvider.from_xml(args.wiki_abstracts, titles)
    return load_wordnet(args.wordnet_dir, args.relations, abstracts=abstracts)


def _emit(args, payload: str) -> None:
    if args.output:
        Path(args.output).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)


def _cmd_summarize(args, config) -> None:
    text, source_id = _read_input(args.input)
    kb = _load(args, text)
    doc = split_sentences(text, source_id)
    summary = summarize(doc, kb, config)
    if args.format == "json":
        report = {"schema": SUMMARY_SCHEMA, "config": config.to_dict(), **summary.to_dict()}
        _emit(args, json.dumps(report, indent=2) + "\n")
    else:
        _emit(args, summary.text + "\n")


def _cmd_evaluate(args, config) -> None:
    kb = _load(args)
    report = evaluate_corpus(
        args.manifest, kb, config, args.jobs, args.rouge_stem, args.rouge_drop_stopwords
    )
    if args.format == "json":
        _emit(args, json.dumps(report.to_dict(), indent=2) + "\n")
        return
    lines = [f"{'doc_id':<20} {'P':>7} {'R':>7} {'F1':>7} {'ROUGE-1':>8} {'ROUGE-2':>8}"]
    for row in report.to_dict()["documents"]:
        lines.append(
            f"{row['doc_id']:<20} {row['p']:7.4f} {row['r']:7.4f} {row['f1']:7.4f} "
            f"{row['rouge1']:8.5f} {row['rouge2']:8.5f}"
        )
    avg = report.averages
    lines.append(
        f"{'average':<20} {avg['p']:7.4f} {avg['r']:7.4f} {avg['f1']:7.4f} "
        f"{avg['rouge1']:8.5f} {avg['rouge2']:8.5f}"
    )
    _emit(args, "\n".join(lines) + "\n")


def _chain_dict(chain):
    return {
        "id": chain.id,
        "score": chain.score,
        "members": [
            {"lemma": m.lemma, "sentence": m.sentence_index, "sense": m.sense,
             "sense_number": m.sense_number, "pos": m.pos}
            for m in chain.members
        ],
    }


def _cmd_inspect(args, config) -> None:
    text, source_id = _read_input(args.input)
    kb = _load(args, text)
    doc = split_sentences(text, source_id)
    chains, kept, clusters, sequences, counts = analyze(doc, kb, config)
    kept_ids = {c.id for c in kept}
    report = {
        "schema": CHAINS_SCHEMA,
        "source_id": source_id,
        "sentences": len(doc.sentences),
        "counts": counts,
        "chains": [dict(_chain_dict(c), kept=c.id in kept_ids) for c in chains],
        "clusters": [
            {"id": cl.id, "score": cl.score, "chains": [c.id for c in cl.chains],
             "profile": list(cl.profile)}
            for cl in clusters
        ],
        "sequences": [
            {"cluster": s.cluster_id, "start": s.start_sentence, "end": s.end_sentence,
             "l": s.l, "slc": s.slc, "plc": s.plc, "score": s.score}
            for s in sequences
        ],
    }
    if args.format == "json":
        _emit(args, json.dumps(report, indent=2) + "\n")
        return
    lines = [f"{source_id}: {len(doc.sentences)} sentences, {len(chains)} chains, "
             f"{len(kept)} kept, {len(clusters)} clusters"]
    for c in chains:
        words = " ".join(f"{m.lemma}/{m.sentence_index}#{m.sense_number}" for m in c.members)
        flag = "*" if c.id in kept_ids else " "
        lines.append(f"{flag} chain {c.id:3d} score {c.score:6.2f}: {words}")
    for cl in clusters:
        lines.append(f"cluster {cl.id:3d} score {cl.score:6.2f} chains {[c.id for c in cl.chains]}")
    for s in sequences:
        lines.append(
            f"sequence cluster {s.cluster_id:3d} sentences {s.start_sentence}-{s.end_sentence} "
            f"l={s.l} slc={s.slc} plc={s.plc} score {s.score:.4f}"
        )
    _emit(args, "\n".join(lines) + "\n")


COMMANDS = {"summarize": _cmd_summarize, "evaluate": _cmd_evaluate, "inspect-chains": _cmd_inspect}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(args)
        config = _config(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        print(f"usage: {parser.format_usage().split(':', 1)[1].strip()}", file=sys.stderr)
        return EXIT_USAGE
    except LexsumError as exc:
        print(f"lexsum: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args, config)
    except (LexsumError, OSError, UnicodeDecodeError) as exc:
        print(f"lexsum: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


def main() -> None:
    sys.exit(run())
