"""Command-line front end: run scenario files and the shipped corpus."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

import yaml

from .errors import QuotlabError
from .scenarios import (
    SCHEMA_VERSION,
    Context,
    Report,
    ScenarioParseError,
    find_scenario,
    load_corpus,
    load_scenario,
    run_scenario,
)

EXIT_OK, EXIT_FAIL, EXIT_PARSE = 0, 1, 2


def _format_value(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, ensure_ascii=False)
    return str(v)


def render_text(doc: dict, timing: bool) -> str:
    lines = []
    head = f"scenario {doc['scenario']}: {doc['outcome']}"
    if timing and "seconds" in doc:
        head += f" ({doc['seconds']:.3f}s)"
    lines.append(head)
    if doc.get("error"):
        lines.append(f"  error: {doc['error']}")
    for i, t in enumerate(doc["tasks"]):
        line = f"  [{t['outcome']}] {i}: {t['op']}"
        if t.get("provenance"):
            line += f" ({t['provenance']})"
        if t.get("certified_degree") is not None:
            line += f" certified below degree {t['certified_degree']}"
        lines.append(line)
        if t.get("message"):
            lines.append(f"      {t['message']}")
        for key, value in t["artifacts"].items():
            lines.append(f"      {key} = {_format_value(value)}")
        for c in t["checks"]:
            if not c["ok"]:
                lines.append(f"      check {c['name']} failed: expected {_format_value(c.get('expected'))}, "
                             f"computed {_format_value(c.get('computed'))}")
    return "\n".join(lines)


def render_tree(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)


def _run_path(args: tuple[str, int | None]) -> dict:
    path, truncation = args
    rep = run_scenario(load_scenario(path), truncation)
    return {"with_timing": rep.describe(True), "without_timing": rep.describe(False)}


def run_corpus(tag: str | None = None, jobs: int = 1, truncation: int | None = None, timing: bool = True) -> list[dict]:
    """Reports for the corpus, sorted by scenario name and independent of ``jobs``."""
    scenarios = load_corpus(tag)
    by_name = {s.name: s.source for s in scenarios}
    items = [(by_name[name], truncation) for name in sorted(by_name)]
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            docs = list(pool.map(_run_path, items))
    else:
        docs = [_run_path(it) for it in items]
    key = "with_timing" if timing else "without_timing"
    return sorted((d[key] for d in docs), key=lambda d: d["scenario"])


def corpus_document(docs: list[dict]) -> dict:
    counts = {"pass": 0, "fail": 0, "gated": 0}
    for d in docs:
        counts[d["outcome"]] += 1
    return {"schema": SCHEMA_VERSION, "summary": counts, "scenarios": docs}


def render_corpus_text(docs: list[dict], timing: bool) -> str:
    width = max((len(d["scenario"]) for d in docs), default=8)
    lines = [f"schema: {SCHEMA_VERSION}"]
    for d in docs:
        tasks = d["tasks"]
        counts = {o: sum(1 for t in tasks if t["outcome"] == o) for o in ("pass", "fail", "gated")}
        line = f"{d['scenario']:<{width}}  {d['outcome']:<5}  tasks {len(tasks):>2}  " \
               f"pass {counts['pass']:>2}  fail {counts['fail']:>2}  gated {counts['gated']:>2}"
        if timing:
            line += f"  {d['seconds']:.3f}s"
        lines.append(line)
    total = corpus_document(docs)["summary"]
    lines.append(f"total {len(docs)}: pass {total['pass']}, fail {total['fail']}, gated {total['gated']}")
    return "\n".join(lines)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--truncation", type=int, default=None, help="override the truncation degree of every algebra")
    p.add_argument("--format", choices=("text", "tree"), default="text", help="text summary or a JSON tree")
    p.add_argument("--no-timing", action="store_true", help="omit timings (for byte-identical reports)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quotlab", description="Invariants of finite group actions on truncated algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="run one scenario file")
    p_run.add_argument("file")
    _common(p_run)
    p_corpus = sub.add_parser("corpus", help="run the shipped scenario corpus")
    p_corpus.add_argument("--tag", default=None, help="only scenarios carrying this tag")
    p_corpus.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p_corpus.add_argument("--list", action="store_true", help="list scenario names without running them")
    _common(p_corpus)
    p_show = sub.add_parser("show", help="print one artifact of a scenario")
    p_show.add_argument("scenario", help="corpus scenario name or a file path")
    p_show.add_argument("artifact", help="report, algebra, action, an operation name, or op.key")
    _common(p_show)
    return parser


def _select(doc: dict, artifact: str):
    if artifact == "report":
        return doc
    op, _, key = artifact.partition(".")
    for t in doc["tasks"]:
        if t["op"] == op:
            if not key:
                return t
            if key in t["artifacts"]:
                return t["artifacts"][key]
            raise KeyError(artifact)
    raise KeyError(artifact)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    timing = not args.no_timing
    out = sys.stdout
    try:
        if args.command == "run":
            scenario = load_scenario(args.file)
            rep: Report = run_scenario(scenario, args.truncation)
            doc = rep.describe(timing)
            out.write((render_tree(doc) if args.format == "tree" else render_text(doc, timing)) + "\n")
            return EXIT_OK if rep.outcome != "fail" else EXIT_FAIL
        if args.command == "corpus":
            if args.list:
                for s in load_corpus(args.tag):
                    out.write(s.name + ("  [" + ", ".join(s.tags) + "]" if s.tags else "") + "\n")
                return EXIT_OK
            docs = run_corpus(args.tag, args.jobs, args.truncation, timing)
            if args.format == "tree":
                out.write(render_tree(corpus_document(docs)) + "\n")
            else:
                out.write(render_corpus_text(docs, timing) + "\n")
            return EXIT_FAIL if any(d["outcome"] == "fail" for d in docs) else EXIT_OK
        if args.command == "show":
            scenario = find_scenario(args.scenario)
            if args.artifact in ("algebra", "action"):
                ctx = Context(scenario, args.truncation)
                obj = ctx.algebra if args.artifact == "algebra" else ctx.action
                value = obj.describe() if obj is not None else None
            else:
                doc = run_scenario(scenario, args.truncation).describe(timing)
                try:
                    value = _select(doc, args.artifact)
                except KeyError:
                    sys.stderr.write(f"error: scenario {scenario.name} has no artifact {args.artifact!r}\n")
                    return EXIT_FAIL
            if args.format == "tree":
                out.write(render_tree(value) + "\n")
            else:
                out.write(yaml.safe_dump(value, sort_keys=False, allow_unicode=True))
            return EXIT_OK
    except ScenarioParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except QuotlabError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAIL
    return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
