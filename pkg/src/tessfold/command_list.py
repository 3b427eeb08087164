"""
Entry point for the tessfold command-line.
Creates the Typer app and its commands
"""

import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Optional

import click
import typer
from tabulate import tabulate
from typer import Typer

from tessfold.command_processor import CommandProcessor
from tessfold.decorators import EXIT_USAGE_ERROR, catch_tessfold_exceptions
from tessfold.generators.fold_generator import FoldGenerator
from tessfold.generators.report_generator import dump_report
from tessfold.generators.svg_generator import SvgGenerator
from tessfold.pattern import CreasePattern
from tessfold.settings import Settings
from tessfold.type_aliases import TableType
from tessfold.utils import write_file, write_json_file

app = Typer(add_completion=False)

settings = Settings()
processor = CommandProcessor(settings=settings)

logging.basicConfig(level=logging.INFO)

TILE_HELP = "Tile angles alpha,beta,gamma,delta in degrees"
MIURA_HELP = "Miura-ori with this parallelogram angle in degrees"
CHICKEN_WIRE_HELP = "Chicken Wire with this trapezoid base angle in degrees"
FOLD_HELP = "Import the pattern from a FOLD file"
GRID_HELP = "Face grid as ROWSxCOLS"
JSON_HELP = "Print JSON instead of tables"


def print_json(data: Any) -> None:
    typer.echo(json.dumps(data, indent=2))


def print_table(table: TableType) -> None:
    typer.echo(tabulate(table, headers="keys"))


def load(grid: str, tile: Optional[str], miura: Optional[float], chicken_wire: Optional[float],
         fold: Optional[Path]) -> CreasePattern:
    return processor.load_pattern(grid=grid, tile=tile, miura=miura, chicken_wire=chicken_wire, fold=fold)


@app.command("generate")
@catch_tessfold_exceptions
def generate(
    tile: Optional[str] = typer.Option(None, "--tile", help=TILE_HELP),
    miura: Optional[float] = typer.Option(None, "--miura", help=MIURA_HELP),
    chicken_wire: Optional[float] = typer.Option(None, "--chicken-wire", help=CHICKEN_WIRE_HELP),
    fold: Optional[Path] = typer.Option(None, "--fold", help=FOLD_HELP),
    grid: str = typer.Option("3x3", "--grid", help=GRID_HELP),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the pattern to a .fold or .svg file"),
    json_output: bool = typer.Option(False, "--json", help=JSON_HELP),
) -> None:
    """
    Generate a crease pattern and print its summary.

    For example: tessfold generate --chicken-wire 60 --grid 3x3 --out cw.fold
    """
    pattern = load(grid, tile, miura, chicken_wire, fold)
    pattern_class = processor.pattern_class(pattern)
    summary = {"kind": pattern.kind, "class": pattern_class.value, "grid": f"{pattern.rows}x{pattern.cols}",
               "vertices": len(pattern.vertices), "interior vertices": len(pattern.interior_vertices),
               "creases": pattern.crease_count}
    if out is not None:
        if out.suffix.lower() == ".svg":
            write_file(out, SvgGenerator.generate(pattern))
        else:
            write_json_file(out, FoldGenerator.generate(pattern))
    if json_output:
        print_json(summary)
    else:
        print_table([summary])
        if out is not None:
            typer.echo(f"Pattern written to '{out}'")


@app.command("modes")
@catch_tessfold_exceptions
def modes(
    tile: Optional[str] = typer.Option(None, "--tile", help=TILE_HELP),
    miura: Optional[float] = typer.Option(None, "--miura", help=MIURA_HELP),
    chicken_wire: Optional[float] = typer.Option(None, "--chicken-wire", help=CHICKEN_WIRE_HELP),
    fold: Optional[Path] = typer.Option(None, "--fold", help=FOLD_HELP),
    grid: str = typer.Option("3x3", "--grid", help=GRID_HELP),
    mode: str = typer.Option("all", "--mode", help="Mode label or 'all'"),
    json_output: bool = typer.Option(False, "--json", help=JSON_HELP),
) -> None:
    """
    List the folding modes of a pattern at the flat state.
    """
    pattern = load(grid, tile, miura, chicken_wire, fold)
    found = processor.modes(pattern)
    label = processor.parse_mode(mode, default_all=True)
    selected = found if label is None else [processor.select_mode(found, label)]
    if json_output:
        print_json([{"label": item.label, "vertex_modes": list(item.vertex_modes), "mv": "".join(item.mv_assignment),
                     "tangent": [float(value) for value in item.tangent]} for item in selected])
        return
    print_table([{"mode": item.label, "vertex modes": " ".join(str(value) for value in item.vertex_modes),
                  "mv": "".join(item.mv_assignment)} for item in selected])
    typer.echo(f"{len(found)} mode(s)")


@app.command("analyze")
@catch_tessfold_exceptions
def analyze(
    tile: Optional[str] = typer.Option(None, "--tile", help=TILE_HELP),
    miura: Optional[float] = typer.Option(None, "--miura", help=MIURA_HELP),
    chicken_wire: Optional[float] = typer.Option(None, "--chicken-wire", help=CHICKEN_WIRE_HELP),
    fold: Optional[Path] = typer.Option(None, "--fold", help=FOLD_HELP),
    grid: str = typer.Option("3x3", "--grid", help=GRID_HELP),
    mode: str = typer.Option("all", "--mode", help="Mode label or 'all'"),
    driver: float = typer.Option(60.0, "--driver", help="Largest seed crease angle of the fold paths in degrees"),
    steps: int = typer.Option(50, "--steps", help="Number of points on the fold paths"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the report JSON to this file"),
    require_unique: bool = typer.Option(False, "--require-unique",
                                        help="Exit with code 2 when a mode is not uniquely self-foldable"),
    json_output: bool = typer.Option(False, "--json", help=JSON_HELP),
) -> None:
    """
    Analyze the self-foldability of the modes of a pattern.

    For example: tessfold analyze --tile 50,110,130,70 --grid 3x3 --json
    """
    pattern = load(grid, tile, miura, chicken_wire, fold)
    report = processor.analyze(pattern, processor.parse_mode(mode, default_all=True), driver, steps,
                               require_unique=require_unique, out=out)
    if json_output:
        print_json(dump_report(report))
        return
    typer.echo(f"Pattern class: {report.pattern.pattern_class}, {report.mode_count} mode(s), "
               f"tangent space dimension {report.pattern.tangent_dim}")
    print_table([{"mode": verdict.target_mode, "uniquely self-foldable": verdict.uniquely_self_foldable,
                  "span residual": f"{verdict.span_residual:.3e}",
                  "forward force": "-" if verdict.forward_force is None else f"{verdict.forward_force:.6f}",
                  "min forward force on path": "-" if verdict.forward_force_trace is None
                  else f"{verdict.forward_force_trace.minimum:.6f}"} for verdict in report.verdicts])
    if out is not None:
        typer.echo(f"Report written to '{out}'")


@app.command("selffold")
@catch_tessfold_exceptions
def selffold(
    tile: Optional[str] = typer.Option(None, "--tile", help=TILE_HELP),
    miura: Optional[float] = typer.Option(None, "--miura", help=MIURA_HELP),
    chicken_wire: Optional[float] = typer.Option(None, "--chicken-wire", help=CHICKEN_WIRE_HELP),
    fold: Optional[Path] = typer.Option(None, "--fold", help=FOLD_HELP),
    grid: str = typer.Option("3x3", "--grid", help=GRID_HELP),
    mode: str = typer.Option("1", "--mode", help="Mode label or 'all'"),
    require_unique: bool = typer.Option(False, "--require-unique",
                                        help="Exit with code 2 when the mode is not uniquely self-foldable"),
    json_output: bool = typer.Option(False, "--json", help=JSON_HELP),
) -> None:
    """
    Decide unique self-foldability and print the driving force per crease.
    """
    pattern = load(grid, tile, miura, chicken_wire, fold)
    found = processor.modes(pattern)
    verdicts = processor.verdicts(pattern, found, processor.parse_mode(mode, default_all=True), require_unique)
    if json_output:
        print_json([{"mode": verdict.target_mode, "uniquely_self_foldable": verdict.uniquely_self_foldable,
                     "span_residual": verdict.span_residual,
                     "driving_force": None if verdict.driving_force is None
                     else [float(value) for value in verdict.driving_force.per_crease_torques],
                     "refusal_reason": verdict.refusal_reason} for verdict in verdicts])
        return
    for verdict in verdicts:
        if verdict.driving_force is None:
            typer.echo(f"Mode {verdict.target_mode}: {verdict.refusal_reason}")
            continue
        typer.echo(f"Mode {verdict.target_mode} is uniquely self-foldable, forward force "
                   f"{verdict.forward_force:.6f}")
        print_table([{"crease": crease, "torque": round(float(torque), 12)}
                     for crease, torque in enumerate(verdict.driving_force.per_crease_torques)])


@app.command("simulate")
@catch_tessfold_exceptions
def simulate(
    tile: Optional[str] = typer.Option(None, "--tile", help=TILE_HELP),
    miura: Optional[float] = typer.Option(None, "--miura", help=MIURA_HELP),
    chicken_wire: Optional[float] = typer.Option(None, "--chicken-wire", help=CHICKEN_WIRE_HELP),
    fold: Optional[Path] = typer.Option(None, "--fold", help=FOLD_HELP),
    grid: str = typer.Option("3x3", "--grid", help=GRID_HELP),
    mode: str = typer.Option("1", "--mode", help="Mode label"),
    driver: float = typer.Option(60.0, "--driver", help="Largest seed crease angle in degrees"),
    steps: int = typer.Option(50, "--steps", help="Number of points on the fold path"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the last folded state to a FOLD file"),
    json_output: bool = typer.Option(False, "--json", help=JSON_HELP),
) -> None:
    """
    Fold a mode from the flat state and check closure and placement at every point.
    """
    pattern = load(grid, tile, miura, chicken_wire, fold)
    label = processor.parse_mode(mode, default_all=False)
    assert label is not None
    result = processor.simulate(pattern, label, driver, steps)
    if out is not None:
        write_json_file(out, FoldGenerator.generate(pattern, result.path.points[-1]))
    if json_output:
        print_json({"mode": label, "driver_values_deg": [math.degrees(value) for value in result.path.driver_values],
                    "chord_lengths": [float(value) for value in result.path.chord_lengths],
                    "folding_angles": [[float(angle) for angle in point.folding_angles]
                                       for point in result.path.points],
                    "closure_residuals": result.closure_residuals, "forward_forces": result.forward_forces,
                    "max_placement_deviation": result.max_placement_deviation,
                    "non_monotone_creases": result.non_monotone_creases})
        return
    print_table(processor.simulation_table(result))
    typer.echo(f"Largest closure residual {max(result.closure_residuals):.2e}, "
               f"largest placement deviation {result.max_placement_deviation:.2e}")
    if result.non_monotone_creases:
        typer.echo(f"Creases with non-monotone folding angles: {result.non_monotone_creases}")


@app.command("export")
@catch_tessfold_exceptions
def export(
    tile: Optional[str] = typer.Option(None, "--tile", help=TILE_HELP),
    miura: Optional[float] = typer.Option(None, "--miura", help=MIURA_HELP),
    chicken_wire: Optional[float] = typer.Option(None, "--chicken-wire", help=CHICKEN_WIRE_HELP),
    fold: Optional[Path] = typer.Option(None, "--fold", help=FOLD_HELP),
    grid: str = typer.Option("3x3", "--grid", help=GRID_HELP),
    mode: str = typer.Option("1", "--mode", help="Mode label whose assignment is exported, or 'none'"),
    driver: Optional[float] = typer.Option(None, "--driver", help="Export the mode folded to this angle in degrees"),
    out: Path = typer.Option(..., "--out", help="Destination file, .svg for SVG and FOLD otherwise"),
) -> None:
    """
    Export a crease pattern with the mountain-valley assignment of a mode, or a folded state, to FOLD or SVG.
    """
    pattern = load(grid, tile, miura, chicken_wire, fold)
    label = None if mode.lower() == "none" else processor.parse_mode(mode, default_all=False)
    processor.export(pattern, out, mode=label, driver=driver)
    typer.echo(f"Exported to '{out}'")


def main() -> None:
    """Run the app, command line usage errors exit with code 1"""
    try:
        app(standalone_mode=False)
    except click.exceptions.ClickException as exception:
        exception.show()
        sys.exit(EXIT_USAGE_ERROR)
    except click.exceptions.Abort:
        typer.echo("Aborted!")
        sys.exit(EXIT_USAGE_ERROR)


if __name__ == "__main__":
    main()
