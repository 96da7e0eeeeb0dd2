"""Batch entry point; data to declared outputs, logs to stderr."""
from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import click

from . import SCHEMA_VERSIONS, __version__

log = logging.getLogger("mviqa")

# distinct exit codes per failure class (2 is click's own usage error)
EXIT_MISSING_INPUT = 3
EXIT_SCHEMA = 4
EXIT_CODEC = 5
EXIT_ALIGNMENT = 6


def _fail(code: int, message: str):
    log.error(message)
    sys.exit(code)


def _print_version(ctx, param, value):
    if not value or ctx.resilient_parsing:
        return
    click.echo(f"mviqa {__version__}")
    for name, schema in sorted(SCHEMA_VERSIONS.items()):
        click.echo(f"  {name}: {schema}")
    ctx.exit()


@click.group()
@click.option("--version", is_flag=True, callback=_print_version,
              expose_value=False, is_eager=True, help="Print schema versions and exit.")
@click.option("-v", "--verbose", is_flag=True, help="Debug logging on stderr.")
def main(verbose: bool):
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _require(path: str, what: str) -> Path:
    p = Path(path)
    if not p.exists():
        _fail(EXIT_MISSING_INPUT, f"{what} not found: {p}")
    return p


def _load_schedule(schedule_path: str | None):
    from .corruption.schedule import ParamSchedule

    if schedule_path is None:
        return ParamSchedule.default()
    return ParamSchedule.from_file(_require(schedule_path, "schedule"))


@main.command()
@click.option("--refs", required=True, help="Reference list (JSONL).")
@click.option("--schedule", "schedule_path", default=None, help="Parameter schedule YAML.")
@click.option("--seed", required=True, type=int, help="Master seed.")
@click.option("--out", required=True, help="Output directory.")
@click.option("--jobs", default=1, type=int, show_default=True)
def corrupt(refs: str, schedule_path: str | None, seed: int, out: str, jobs: int):
    """Synthesize the 30-kind distorted set for each reference."""
    from .corruption.codecs import CodecUnavailableError
    from .corruption.dataset import generate_dataset, load_references

    try:
        ref_list = load_references(_require(refs, "reference list"))
        sched = _load_schedule(schedule_path)
    except (ValueError, KeyError) as e:
        _fail(EXIT_SCHEMA, f"bad input: {e}")
    try:
        summary = generate_dataset(ref_list, sched, seed, out, jobs=jobs)
    except CodecUnavailableError as e:
        _fail(EXIT_CODEC, str(e))
    for ref_id, why in summary.skipped:
        log.warning("skipped %s: %s", ref_id, why)
    log.info("wrote %d pairs to %s", len(summary.pairs), out)


@main.command()
@click.option("--manifest", required=True)
@click.option("--qa", "qa_path", required=True, help="QA bundles (JSONL).")
@click.option("--schedule", "schedule_path", default=None)
@click.option("--sensitivity", default=0.8, type=float, show_default=True)
@click.option("--base-error", default=0.05, type=float, show_default=True)
@click.option("--seed", required=True, type=int)
@click.option("--out", required=True, help="Response file to write.")
@click.option("--mask-dir", default=None, help="Directory for mask files.")
def mock(manifest, qa_path, schedule_path, sensitivity, base_error, seed, out, mask_dir):
    """Generate deterministic stand-in subject responses."""
    from .annotate.qa import load_bundles
    from .corruption.dataset import read_manifest
    from .ingest import default_mock_roster, generate_mock_responses, write_responses

    try:
        pairs = read_manifest(_require(manifest, "manifest"))
        qa = load_bundles(_require(qa_path, "qa bundles"))
        sched = _load_schedule(schedule_path)
    except (ValueError, KeyError) as e:
        _fail(EXIT_SCHEMA, f"bad input: {e}")
    if mask_dir is None:
        mask_dir = str(Path(out).parent / "masks")
    records = generate_mock_responses(
        default_mock_roster(), pairs, qa, sched, sensitivity, seed,
        mask_dir=mask_dir, base_error=base_error,
    )
    write_responses(records, out)
    log.info("wrote %d responses to %s", len(records), out)


@main.command()
@click.option("--manifest", required=True)
@click.option("--responses", required=True)
@click.option("--out", required=True, help="Score table to write.")
@click.option("--mask-base", default=None, help="Base directory for mask paths.")
def score(manifest, responses, out, mask_base):
    """Score distorted-side responses against their reference twins."""
    from .corruption.dataset import read_manifest
    from .ingest import (
        IngestError,
        default_mock_roster,
        load_responses,
        score_responses,
        write_score_table,
    )

    try:
        pairs = read_manifest(_require(manifest, "manifest"))
        records, rejects = load_responses(_require(responses, "responses"), default_mock_roster())
    except IngestError as e:
        _fail(EXIT_SCHEMA, str(e))
    except (ValueError, KeyError) as e:
        _fail(EXIT_SCHEMA, f"bad input: {e}")
    for r in rejects:
        log.warning("rejected line %d: %s", r.line, r.reason)
    table, errors = score_responses(pairs, records, mask_base=mask_base)
    for e in errors:
        log.warning("unscored %s/%s/%s: %s", e.pair_id, e.subject_id, e.task.value, e.reason)
    write_score_table(table, out)
    log.info("wrote %d scores to %s", len(table.records), out)


@main.command()
@click.option("--scores", required=True)
@click.option("--weights", "weights_path", default=None, help="JSON dimension weights.")
@click.option("--out", required=True, help="MOS table to write.")
@click.option("--norm-out", default=None, help="Where to save fitted normalization.")
@click.option("--norm-params", default=None, help="Reuse previously fitted normalization.")
@click.option("--allow-partial", is_flag=True, help="Keep pairs with missing subjects.")
@click.option("--percentile-clip", is_flag=True, help="Fit bounds at the 1st/99th percentiles.")
def aggregate(scores, weights_path, out, norm_out, norm_params, allow_partial, percentile_clip):
    """Pool per-subject scores into the five-dimension opinion score."""
    from .aggregate import (
        DegenerateDimensionError,
        NormalizationParams,
        compute_mos,
        fit_normalization,
        write_mos_table,
    )
    from .ingest import read_score_table

    try:
        table = read_score_table(_require(scores, "score table"))
    except ValueError as e:
        _fail(EXIT_SCHEMA, f"bad score table: {e}")
    weights = None
    if weights_path is not None:
        weights = json.loads(_require(weights_path, "weights").read_text())
    try:
        if norm_params is not None:
            params = NormalizationParams.load(_require(norm_params, "normalization"))
        else:
            params = fit_normalization(table, percentile_clip=percentile_clip)
    except DegenerateDimensionError as e:
        _fail(EXIT_SCHEMA, str(e))
    records = compute_mos(table, params, weights=weights, allow_partial=allow_partial)
    write_mos_table(records, out)
    if norm_out is not None:
        params.save(norm_out)
    excluded = sum(1 for r in records if "excluded" in r.flags)
    log.info("wrote %d rows (%d excluded) to %s", len(records), excluded, out)


@main.command()
@click.option("--mos", "mos_path", required=True)
@click.option("--manifest", required=True)
@click.option("--seed", required=True, type=int)
@click.option("--val-fraction", default=0.2, type=float, show_default=True)
@click.option("--out", required=True, help="Split table to write.")
def split(mos_path, manifest, seed, val_fraction, out):
    """Grouped train/val split plus the mild/severe validation halves."""
    from .aggregate import read_mos_table, split_mild_severe, split_train_val
    from .corruption.dataset import read_manifest

    try:
        mos = read_mos_table(_require(mos_path, "mos table"))
        pairs = read_manifest(_require(manifest, "manifest"))
    except ValueError as e:
        _fail(EXIT_SCHEMA, f"bad input: {e}")
    assignment = split_train_val([p.pair_id for p in pairs], seed, val_fraction)
    assignment.save(out)
    cells = {p.pair_id: (p.kind, p.level) for p in pairs}
    scored_val = [pid for pid in assignment.val if pid in mos]
    mild, severe = split_mild_severe(scored_val, mos, cells)
    out_path = Path(out)
    for name, ids in (("mild", mild), ("severe", severe)):
        with open(out_path.with_suffix(f".{name}.txt"), "w") as f:
            f.writelines(f"{pid}\n" for pid in ids)
    log.info("train=%d val=%d mild=%d severe=%d",
             len(assignment.train), len(assignment.val), len(mild), len(severe))


@main.command("eval-iqa")
@click.option("--preds", required=True, help="Metric predictions (pair_id, score).")
@click.option("--mos", "mos_path", required=True)
@click.option("--split", "split_path", default=None, help="Split table for subset reports.")
@click.option("--logistic", is_flag=True, help="PLCC after a 4-parameter logistic map.")
@click.option("--out", required=True, help="Report table to write.")
def eval_iqa(preds, mos_path, split_path, logistic, out):
    """Rank-correlation report of a metric against the opinion scores."""
    from .aggregate import SplitAssignment, read_mos_table
    from .stats.report import AlignmentError, evaluate_metric, write_reports
    from .stats.report import read_score_table as read_preds

    try:
        pred_map = read_preds(_require(preds, "predictions"))
        mos = read_mos_table(_require(mos_path, "mos table"))
    except ValueError as e:
        _fail(EXIT_SCHEMA, f"bad input: {e}")
    subsets = None
    if split_path is not None:
        assignment = SplitAssignment.load(_require(split_path, "split"))
        subsets = {"train": set(assignment.train), "val": set(assignment.val)}
        for name in ("mild", "severe"):
            side = Path(split_path).with_suffix(f".{name}.txt")
            if side.exists():
                subsets[name] = {l.strip() for l in side.read_text().splitlines() if l.strip()}
    try:
        reports = evaluate_metric(pred_map, mos, subsets=subsets, logistic=logistic)
    except AlignmentError as e:
        _fail(EXIT_ALIGNMENT, f"prediction/mos id mismatch, first offending id: {e.missing_id}")
    write_reports(reports, out)
    log.info("wrote %d reports to %s", len(reports), out)


@main.command()
@click.option("--images", required=True, help="Directory or file list of images.")
@click.option("--out", required=True, help="Feature table to write.")
def features(images, out):
    """Scalar content descriptors per image."""
    from .imgcore.buffer import load_image
    from .stats.features import features as profile

    root = _require(images, "image input")
    if root.is_dir():
        paths = sorted(p for p in root.iterdir() if p.suffix.lower() in (".png", ".jpg", ".jpeg", ".webp"))
    else:
        paths = [Path(l.strip()) for l in root.read_text().splitlines() if l.strip()]
    with open(out, "w") as f:
        f.write("image\tluminance\tcontrast\tchrominance\tblur\tspatial_information\n")
        for p in paths:
            try:
                fp = profile(load_image(p))
            except Exception as e:
                log.warning("skipped %s: %s", p, e)
                continue
            f.write(f"{p.name}\t{fp.luminance:.6f}\t{fp.contrast:.6f}"
                    f"\t{fp.chrominance:.6f}\t{fp.blur:.6f}\t{fp.spatial_information:.6f}\n")
    log.info("wrote features for %d images to %s", len(paths), out)


@main.command("serve-annotation")
@click.option("--corpus", required=True, help="QA bundles (JSONL).")
@click.option("--state-dir", required=True, help="Event log directory.")
@click.option("--port", default=8077, type=int, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--experts", required=True, help="Comma-separated expert ids.")
def serve_annotation(corpus, state_dir, port, host, experts):
    """Run the expert annotation service."""
    import uvicorn

    from .annotate import AnnotationService, create_app, load_bundles

    try:
        bundles = load_bundles(_require(corpus, "corpus"))
    except ValueError as e:
        _fail(EXIT_SCHEMA, f"bad corpus: {e}")
    service = AnnotationService(bundles, state_dir, [e.strip() for e in experts.split(",") if e.strip()])
    app = create_app(service)
    log.info("serving %d items on %s:%d", len(bundles), host, port)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
