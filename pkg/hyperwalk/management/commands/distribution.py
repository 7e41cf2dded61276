"""
Export the full transition distribution of an initial state.

Every final state carries its probability and a "suppressed" flag for
probabilities below the tolerance. Bosonic and fermionic runs add the
suppression-law prediction; distinguishable runs leave those columns empty.

Usage:
    python manage.py distribution --d 3 --initial 1,1,1,1,1,1,1,1 --out hc3.csv
    python manage.py distribution --d 2 --initial 1,0,0,1 --stats fermion --format json
"""
from django.core.management.base import CommandError

from hyperwalk.cli import EXIT_VERIFICATION, CommandName, HyperwalkCommand, OutputFormat
from hyperwalk.exports import DISTRIBUTION_COLUMNS, format_probability, write_csv, write_json
from hyperwalk.interference import Statistics, full_distribution
from hyperwalk.supplaw import classify
from hyperwalk.symmetry import eta
from hyperwalk.unitary import build_unitary

NORMALIZATION_TOL = 1e-8


class Command(HyperwalkCommand):
    help = "Compute and export P(r, s) for every final state s"

    command_name = CommandName.DISTRIBUTION
    arguments = ("d", "m", "sub", "seed", "initial", "stats", "tol", "out", "format", "workers")
    requires_initial = True

    def run(self, cfg, options):
        spec = cfg.hypercube()
        initial = cfg.initial
        unitary = build_unitary(spec)
        pairs = list(full_distribution(unitary, initial, cfg.statistics, cfg.workers))

        with_law = cfg.statistics != Statistics.DISTINGUISHABLE
        records = list(classify(initial, spec, cfg.statistics)) if with_law else [None] * len(pairs)
        independent = eta(initial, spec.d, spec.m)

        rows = []
        for (final, prob), rec in zip(pairs, records):
            rows.append({
                "final_state": final,
                "probability": prob,
                "suppressed": bool(prob < cfg.tolerance),
                "suppressed_predicted": rec.any_suppressed if rec else None,
                "classification_set": rec.classification if rec else None,
            })

        with self.open_output(cfg.output_path) as stream:
            if cfg.format == OutputFormat.JSON:
                write_json(stream, {
                    "initial": initial.to_json(),
                    "statistics": cfg.statistics.value,
                    "eta": independent,
                    "records": [
                        dict(row, final_state=row["final_state"].to_json()) for row in rows
                    ],
                })
            else:
                write_csv(stream, DISTRIBUTION_COLUMNS, (
                    [
                        str(row["final_state"]),
                        format_probability(row["probability"]),
                        int(row["suppressed"]),
                        "" if row["suppressed_predicted"] is None else int(row["suppressed_predicted"]),
                        row["classification_set"] or "",
                    ]
                    for row in rows
                ), comments={"initial": str(initial), "statistics": cfg.statistics.value, "eta": independent,
                            "tolerance": format(cfg.tolerance, "g")})

        total = sum(prob for _, prob in pairs)
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise CommandError(f"Distribution sums to {total!r}, not 1.", returncode=EXIT_VERIFICATION)
        self.notice(cfg, f"{len(pairs)} final states, total probability {total:.12f}", self.style.SUCCESS)
