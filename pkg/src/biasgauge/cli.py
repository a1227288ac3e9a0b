"""Command-line driver.

    biasgauge annotate INPUT --protected COL --target COL --positive VALUE [...]
    biasgauge annotate --config audit.ini INPUT
    biasgauge annotate --example motivating
    biasgauge fixtures

Exit codes: 0 success, 1 internal error, 2 invalid input or configuration,
3 unreadable input, 4 output not writable. Errors are printed to stderr as
one JSON object: {"error": <kind>, "message": ..., "exit_code": ...}.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import __version__
from .annotation import AnnotationDocument, annotate, annotate_tables, serialize
from .errors import EXIT_OK, BiasGaugeError, ConfigError, OutputNotWritable
from .fixtures import DATASETS, fixture_path, fixture_status, fixtures_dir, get_example
from .ingest import MISSING_POLICIES, AuditConfig, load_config, load_dataset, validate_binary_target
from .probability import from_specified_priors
from .render import render_badges, safe_stem

CONFIG_FLAGS = ("protected", "target", "positive", "negative", "missing_policy", "delimiter", "no_header")


@dataclass
class RunOptions:
    input: Path | None = None
    config: AuditConfig | None = None
    out_dir: Path = Path(".")
    emit_badges: bool = False
    format: str = "json"
    low_prior_threshold: float | None = None
    skew_threshold: float | None = None
    example: str | None = None
    created_at: str | None = None
    written: list[Path] = field(default_factory=list)


def _apply_overrides(config: AuditConfig, options: RunOptions) -> AuditConfig:
    overrides = {}
    if options.low_prior_threshold is not None:
        overrides["low_prior_threshold"] = options.low_prior_threshold
    if options.skew_threshold is not None:
        overrides["skew_threshold"] = options.skew_threshold
    return replace(config, **overrides) if overrides else config


def render_text(doc: AnnotationDocument) -> str:
    """Plain-text rendering of the document's display values."""
    lines = [f"annotation: {doc.name}"]
    if doc.meta["n_rows"] is not None:
        lines.append(f"rows: {doc.meta['n_rows']}")
    for w in doc.meta["warnings"]:
        lines.append(f"warning: {w}")
    d = doc.dependence
    lines.append("")
    lines.append("[dependence]")
    if d["computable"]:
        disp = d["display"]
        lines.append(f"chi_square: {disp['chi_square']}")
        lines.append(f"contingency_coefficient: {disp['contingency_coefficient']}")
        lines.append(f"effect_size_w: {disp['effect_size_w']}")
        lines.append(f"magnitude: {d['magnitude']}")
    else:
        lines.append(f"not computable: {d['reason']}")
    lines.append("")
    lines.append("[diverseness]")
    for row in doc.diverseness["target"]:
        lines.append(f"P(Y={row['level']}) = {row['display']}")
    for row in doc.diverseness["protected"]:
        lines.append(f"P({row['level']}) = {row['display']}")
    lines.append("")
    lines.append("[inclusiveness]")
    for cell in doc.inclusiveness["joint"]:
        lines.append(f"P(Y={cell['target']} and {cell['level']}) = {cell['display']}")
    for cell in doc.inclusiveness.get("stated_joint", []):
        lines.append(f"stated P(Y={cell['target']} and {cell['level']}) = {cell['display']}")
    lines.append("")
    lines.append("[training_likelihood]")
    for cell in doc.training_likelihood["target_given_protected"]:
        lines.append(f"P(Y={cell['target']} | {cell['level']}) = {cell['display']}")
    for cell in doc.training_likelihood["protected_given_target"]:
        lines.append(f"P({cell['level']} | Y={cell['target']}) = {cell['display']}")
    lines.append("")
    lines.append("[flags]")
    for flag in doc.flags:
        lines.append(f"{flag['kind']}: {flag['message']}")
    return "\n".join(lines) + "\n"


def _write_all(out_dir: Path, files: dict[str, str]) -> list[Path]:
    """Write every file or none: stage to temporaries, then rename."""
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        staged = []
        for name, text in files.items():
            fd, tmp = tempfile.mkstemp(prefix=f".{name}.", dir=out_dir)
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            staged.append((Path(tmp), out_dir / name))
    except OSError as exc:
        for tmp, _ in locals().get("staged", []):
            tmp.unlink(missing_ok=True)
        raise OutputNotWritable(f"cannot write to {out_dir}: {exc}") from exc
    for tmp, final in staged:
        os.replace(tmp, final)
    return [final for _, final in staged]


def build_document(options: RunOptions) -> AnnotationDocument:
    if options.example is not None:
        ex = get_example(options.example)
        tbl = from_specified_priors(ex.prior_protected, ex.cond_target_given_protected, ex.protected_levels)
        return annotate_tables(
            tbl,
            ex.name,
            target_semantics=ex.target_semantics,
            low_prior_threshold=options.low_prior_threshold,
            skew_threshold=options.skew_threshold,
            created_at=options.created_at,
        )
    config = _apply_overrides(options.config, options)
    dataset = load_dataset(options.input, config)
    validate_binary_target(dataset)
    return annotate(dataset, config, created_at=options.created_at)


def run_annotate(options: RunOptions) -> int:
    doc = build_document(options)
    stem = safe_stem(doc.name)
    files = {}
    if options.format == "json":
        files[f"{stem}.annotation.json"] = serialize(doc)
    else:
        files[f"{stem}.annotation.txt"] = render_text(doc)
    if options.emit_badges:
        badges = render_badges(doc)
        names = badges.filenames(doc.name)
        for kind, svg in badges.items():
            files[names[kind]] = svg
    options.written = _write_all(options.out_dir, files)

    print(f"report: {options.written[0]}")
    for path in options.written[1:]:
        print(f"badge: {path}")
    d = doc.dependence
    if d["computable"]:
        print(
            f"dependence: C={d['display']['contingency_coefficient']} "
            f"w={d['display']['effect_size_w']} {d['magnitude']}"
        )
    else:
        print(f"dependence: not computable ({d['reason']})")
    print(f"flags: {len(doc.flags)}")
    for w in doc.meta["warnings"]:
        print(f"warning: {w}", file=sys.stderr)
    return EXIT_OK


def run_example(name: str, out_dir: Path = Path("."), emit_badges: bool = False) -> int:
    return run_annotate(RunOptions(example=name, out_dir=out_dir, emit_badges=emit_badges))


def _options_from_args(args: argparse.Namespace) -> RunOptions:
    given = [f for f in CONFIG_FLAGS if getattr(args, f) not in (None, False)]
    if args.example is not None:
        if args.input is not None or args.config is not None or given:
            raise ConfigError("--example cannot be combined with an input file or column options")
        config = None
    else:
        if args.input is None:
            raise ConfigError("an input file is required (or use --example NAME)")
        if args.config is not None:
            if given:
                raise ConfigError(
                    "both --config and column flags given ("
                    + ", ".join("--" + f.replace("_", "-") for f in given)
                    + "); use one or the other"
                )
            config = load_config(args.config)
        else:
            missing = [f for f in ("protected", "target", "positive") if getattr(args, f) is None]
            if missing:
                raise ConfigError("missing required flags: " + ", ".join("--" + m for m in missing))
            config = AuditConfig(
                protected_column=args.protected,
                target_column=args.target,
                positive_label=args.positive,
                negative_label=args.negative,
                missing_policy=args.missing_policy or "drop-row",
                delimiter=args.delimiter or ",",
                has_header=not args.no_header,
                target_semantics=args.target_semantics,
            )
    return RunOptions(
        input=args.input,
        config=config,
        out_dir=args.out,
        emit_badges=args.badges,
        format=args.format,
        low_prior_threshold=args.low_prior_threshold,
        skew_threshold=args.skew_threshold,
        example=args.example,
    )


def _fixtures_cmd(args: argparse.Namespace) -> int:
    directory = fixtures_dir()
    print(f"fixtures directory: {directory}")
    for name in sorted(DATASETS):
        print(f"{name}: {fixture_status(name, directory)}  {fixture_path(name, directory)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biasgauge", description="Annotate a dataset with discriminatory-risk statistics.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    ann = sub.add_parser("annotate", help="compute the annotation report for one dataset")
    ann.add_argument("input", nargs="?", type=Path)
    ann.add_argument("--config", type=Path, help="INI file with an [audit] section")
    ann.add_argument("--protected")
    ann.add_argument("--target")
    ann.add_argument("--positive", help="target value mapped to 1")
    ann.add_argument("--negative", help="target value mapped to 0 (others then rejected)")
    ann.add_argument("--missing-policy", choices=MISSING_POLICIES)
    ann.add_argument("--delimiter")
    ann.add_argument("--no-header", action="store_true")
    ann.add_argument("--target-semantics", help="free-text meaning of target levels, echoed in the report")
    ann.add_argument("--out", type=Path, default=Path("."))
    ann.add_argument("--badges", action="store_true", help="also write the four SVG badges")
    ann.add_argument("--format", choices=("json", "text"), default="json")
    ann.add_argument("--low-prior-threshold", type=float)
    ann.add_argument("--skew-threshold", type=float)
    ann.add_argument("--example", help="run a built-in specified-probability example")

    sub.add_parser("fixtures", help="show where dataset fixtures are expected and their status")
    return parser


def _report_error(exc: BiasGaugeError) -> int:
    payload = {"error": exc.kind, "message": str(exc), "exit_code": exc.exit_code}
    print(json.dumps(payload), file=sys.stderr)
    return exc.exit_code


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "fixtures":
            return _fixtures_cmd(args)
        return run_annotate(_options_from_args(args))
    except BiasGaugeError as exc:
        return _report_error(exc)


if __name__ == "__main__":
    sys.exit(main())
