"""
Check the suppression law against exactly computed probabilities.

Exit status 0 on PASS, 2 when a predicted-suppressed final state carries
probability at or above the tolerance, 3 when a resource bound refuses
the run. The JSON report goes to --out or stdout.

Usage:
    python manage.py verify --d 3 --initial 0,0,2,2,0,0,2,2
    python manage.py verify --d 2 --initial 1,0,0,1 --stats fermion --tol 1e-12
    python manage.py verify --d 1 --m 3 --seed 4 --initial 2,0,0,2,0,0 --workers 4
    python manage.py verify --d 3 --initial 0,0,2,2,0,0,2,2 --sym 8
"""
from django.core.management.base import CommandError

from hyperwalk.cli import EXIT_VERIFICATION, CommandName, HyperwalkCommand
from hyperwalk.exports import format_probability, write_json
from hyperwalk.supplaw import verify


class Command(HyperwalkCommand):
    help = "Verify that every predicted-suppressed final state has vanishing probability"

    command_name = CommandName.VERIFY
    arguments = ("d", "m", "sub", "seed", "initial", "stats", "sym", "tol", "out", "workers")
    requires_initial = True

    def run(self, cfg, options):
        report = verify(cfg.initial, cfg.hypercube(), cfg.statistics, cfg.tolerance, cfg.workers,
                        symmetries=cfg.symmetries)
        with self.open_output(cfg.output_path) as stream:
            write_json(stream, report.to_dict())

        if not report.law_applicable:
            self.notice(cfg, f"Law inapplicable: {cfg.initial} has no hypercube symmetry", self.style.WARNING)
        summary = (
            f"{report.predicted_suppressed_count}/{report.total_finals} predicted suppressed, "
            f"max probability {format_probability(report.max_predicted_probability) or 'n/a'}, "
            f"{report.extra_zero_count} further zeros"
        )
        if not report.passed:
            final, prob = max(report.violations, key=lambda item: item[1])
            raise CommandError(
                f"FAIL: {len(report.violations)} violations (worst {final} with P={format_probability(prob)}); "
                f"{summary}",
                returncode=EXIT_VERIFICATION,
            )
        self.notice(cfg, f"PASS: {summary}", self.style.SUCCESS)
