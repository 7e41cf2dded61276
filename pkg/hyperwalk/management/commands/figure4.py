"""
Reproduce the d=3, N=8 bosonic landscape for the three symmetric initial
states r_a, r_b and r_c.

Writes into the --out directory:
    figure4_r_a.csv, figure4_r_b.csv, figure4_r_c.csv   final_state, probability, set
    figure4_sets.csv                                   long format, one row per (final, initial)
    figure4_summary.csv                                set sizes and per-set maximum probabilities

Usage:
    python manage.py figure4 --out results/figure4
    python manage.py figure4 --out results/figure4 --workers 4
"""
from pathlib import Path

from django.conf import settings

from hyperwalk.cli import CommandName, HyperwalkCommand, RunConfig
from hyperwalk.exports import format_probability, write_csv
from hyperwalk.figure4 import INITIAL_STATES, figure4_rows, figure4_summary


class Command(HyperwalkCommand):
    help = "Reproduce the three-initial-state interference landscape on the 3-cube"

    command_name = CommandName.FIGURE4
    arguments = ("workers",)

    def add_command_arguments(self, parser):
        parser.add_argument("--out", type=Path, default=Path("figure4"), help="Output directory.")

    def build_config(self, options) -> RunConfig:
        workers = options.get("workers")
        return RunConfig(
            command=self.command_name,
            output_path=options.get("out"),
            workers=settings.HYPERWALK_WORKERS if workers is None else workers,
        )

    def run(self, cfg, options):
        out_dir = cfg.output_path
        out_dir.mkdir(parents=True, exist_ok=True)
        rows = figure4_rows(cfg.workers)
        tolerance = settings.HYPERWALK_TOLERANCE

        for label, state in INITIAL_STATES.items():
            with self.open_output(out_dir / f"figure4_r_{label}.csv") as stream:
                write_csv(stream, ["final_state", "probability", "set"], (
                    [str(row.final), format_probability(row.probabilities[label]), row.set_label]
                    for row in rows
                ), comments={"initial": str(state)})

        with self.open_output(out_dir / "figure4_sets.csv") as stream:
            write_csv(stream, ["final_state", "set", "initial", "probability", "suppressed"], (
                [
                    str(row.final),
                    row.set_label,
                    f"r_{label}",
                    format_probability(row.probabilities[label]),
                    int(row.probabilities[label] < tolerance),
                ]
                for row in rows
                for label in INITIAL_STATES
            ))

        summary = figure4_summary(rows)
        with self.open_output(out_dir / "figure4_summary.csv") as stream:
            write_csv(stream, ["set", "size", "max_p_r_a", "max_p_r_b", "max_p_r_c"], (
                [entry["set"], entry["size"]] + [format_probability(entry[f"max_p_{label}"]) for label in INITIAL_STATES]
                for entry in summary
            ))

        sizes = ", ".join(f"{entry['set']}={entry['size']}" for entry in summary)
        self.stdout.write(self.style.SUCCESS(f"{len(rows)} final states written to {out_dir} (sets {sizes})"))
