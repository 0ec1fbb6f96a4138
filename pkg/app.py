"""
app.py — Diagram compiler for connections on the affine line
---------------------------------------------------------
Commands:
- build FILE...          build diagrams from input files (several run concurrently)
- example NAME           build a built-in example
- list-examples          list the built-in examples
- congruent A B [G]      test g^T A g = B, or search for g when G is omitted
Exit codes: 0 ok, 1 parse error, 2 validation error, 3 internal check failed.
"""

import argparse
import asyncio
import json
import sys
from pathlib import Path

from catalog import EXAMPLES, catalog, entry, verify
from diagram_builder import BuildResult, build, check, congruent, search_congruence
from dsl import parse
from render import RENDERERS, render_text, to_payload
from runtime import (
    EXIT_INTERNAL, EXIT_OK, EXIT_PARSE, EXIT_VALIDATION,
    Config, Notifier, ParseError, ValidationError,
)


# ============================================================
# 1️⃣ Setup
# ============================================================
def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="app.py",
        description="Diagram, Cartan matrix and dim M_B of a connection on the affine line.",
    )
    parser.add_argument("--config", help="key=value settings file (default: ./.env if present)")
    parser.add_argument("--verbose", action="store_true", help="print debug lines on stderr")
    parser.add_argument("--quiet", action="store_true", help="suppress warnings on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="build diagrams from input files")
    p_build.add_argument("files", nargs="+")
    p_build.add_argument("--format", choices=sorted(RENDERERS))
    p_build.add_argument("--check", action="store_true", help="cross-check against the dimension oracle")

    p_example = sub.add_parser("example", help="build a built-in example")
    p_example.add_argument("name")
    p_example.add_argument("--format", choices=sorted(RENDERERS))
    p_example.add_argument("--check", action="store_true", help="compare with the stored expectations")

    sub.add_parser("list-examples", help="list built-in examples")

    p_cong = sub.add_parser("congruent", help="integer congruence of symmetric forms")
    p_cong.add_argument("a")
    p_cong.add_argument("b")
    p_cong.add_argument("g", nargs="?")
    p_cong.add_argument("--bound", type=int, help="entry bound for the witness search")
    return parser


# ============================================================
# 2️⃣ Loaders
# ============================================================
def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(f"{path}: not UTF-8 text (byte {e.start})") from None
    except OSError as e:
        raise ValidationError(f"cannot read {path}: {e.strerror}") from None


def load_and_build(path: str) -> BuildResult:
    return build(parse(_read(path)))


def load_matrix(path: str) -> list[list[int]]:
    try:
        data = json.loads(_read(path))
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: {e.msg}", e.lineno, e.colno) from None
    if isinstance(data, dict):
        if "cartan" not in data:
            raise ValidationError(f"{path}: expected a matrix or an object with a 'cartan' key")
        data = data["cartan"]
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise ValidationError(f"{path}: matrix must be a list of rows")
    for row in data:
        for value in row:
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValidationError(f"{path}: matrix entries must be integers, got {value!r}")
    return data


async def build_many(paths: list[str], cfg: Config, notifier: Notifier) -> list[BuildResult]:
    """Build every file concurrently; results come back in input order."""
    semaphore = asyncio.Semaphore(cfg.BATCH_WORKERS)

    async def one(path: str) -> BuildResult:
        async with semaphore:
            notifier.debug(f"building {path}")
            return await asyncio.to_thread(load_and_build, path)

    return await asyncio.gather(*(one(p) for p in paths))


# ============================================================
# 3️⃣ Output
# ============================================================
def emit(results: list[BuildResult], fmt: str, notifier: Notifier, titles: list[str | None]):
    for result in results:
        for warning in result.warnings:
            notifier.send(f"⚠️ {warning}")
        notifier.debug(
            f"{len(result.diagram.nodes)} nodes, (d,d) = {result.cartan.pairing}, dim M_B = {result.cartan.dim_B}"
        )
    if fmt == "json" and len(results) > 1:
        sys.stdout.write(json.dumps([to_payload(r) for r in results], indent=2, ensure_ascii=False) + "\n")
        return
    chunks = []
    for result, title in zip(results, titles):
        if fmt == "text":
            chunks.append(render_text(result, title))
        else:
            chunks.append(RENDERERS[fmt](result))
    sys.stdout.write("\n".join(chunks))


# ============================================================
# 4️⃣ Commands
# ============================================================
def cmd_build(args, cfg: Config, notifier: Notifier) -> int:
    results = asyncio.run(build_many(args.files, cfg, notifier))
    if args.check:
        for path, result in zip(args.files, results):
            dim = check(result)
            notifier.debug(f"✅ {path}: oracle agrees, dim M_B = {dim}")
    emit(results, args.format or cfg.DEFAULT_FORMAT, notifier, list(args.files))
    return EXIT_OK


def cmd_example(args, cfg: Config, notifier: Notifier) -> int:
    item = entry(args.name)
    result = build(catalog(args.name).problem)
    if args.check:
        problems = verify(args.name, result)
        for problem in problems:
            notifier.error(f"{args.name}: {problem}")
        if problems:
            return EXIT_INTERNAL
        notifier.debug(f"✅ {args.name}: matches the stored {item.shape} expectations")
    emit([result], args.format or cfg.DEFAULT_FORMAT, notifier, [item.title])
    return EXIT_OK


def cmd_list(args, cfg: Config, notifier: Notifier) -> int:
    width = max(len(name) for name in EXAMPLES)
    for name, item in EXAMPLES.items():
        marker = " (derived input)" if item.derived else ""
        sys.stdout.write(f"{name:<{width}}  {item.shape:<16}  {item.title}{marker}\n")
    return EXIT_OK


def cmd_congruent(args, cfg: Config, notifier: Notifier) -> int:
    a, b = load_matrix(args.a), load_matrix(args.b)
    if args.g is not None:
        result = congruent(a, b, load_matrix(args.g))
        sys.stdout.write("true\n" if result else "false\n")
        return EXIT_OK
    bound = args.bound or cfg.SEARCH_BOUND
    notifier.debug(f"searching unimodular g with entries in [-{bound}, {bound}]")
    g = search_congruence(a, b, bound)
    sys.stdout.write("none\n" if g is None else json.dumps(g.tolist()) + "\n")
    return EXIT_OK


COMMANDS = {
    "build": cmd_build,
    "example": cmd_example,
    "list-examples": cmd_list,
    "congruent": cmd_congruent,
}


# ============================================================
# 5️⃣ Run
# ============================================================
def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    notifier = Notifier(Config())
    try:
        cfg = Config.load(args.config)
        cfg.VERBOSE = cfg.VERBOSE or args.verbose
        cfg.QUIET = cfg.QUIET or args.quiet
        notifier = Notifier(cfg)
        for key in cfg.ignored_keys:
            notifier.send(f"⚠️ unknown config key {key} ignored")
        return COMMANDS[args.command](args, cfg, notifier)
    except ParseError as e:
        notifier.error(f"parse error: {e}")
        return EXIT_PARSE
    except ValidationError as e:
        notifier.error(f"invalid input: {e}")
        return EXIT_VALIDATION
    except AssertionError as e:
        notifier.error(f"internal check failed: {e}")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
