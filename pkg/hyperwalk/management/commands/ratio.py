"""
Suppression ratios: predicted formulas and exact enumeration counts.

Three modes:
    --initial            exact count for one initial state, with the formulas alongside
    --eta / --particles  formula grid (fermions: exact binomial form with --modes,
                         otherwise the n >> N limit)
    --preset figure3     bosons eta=1..6; fermions N in {4, 16, 64}, n >> N

Rows that violate N = z * 2^eta carry the reason in the error column.

Usage:
    python manage.py ratio --d 3 --initial 1,1,1,1,1,1,1,1
    python manage.py ratio --stats fermion --eta 1 --eta 2 --particles 4 --particles 6
    python manage.py ratio --preset figure3 --format json
"""
from hyperwalk.cli import CommandName, HyperwalkCommand, OutputFormat
from hyperwalk.exports import format_probability, write_csv, write_json
from hyperwalk.interference import Statistics
from hyperwalk.supplaw import RatioReport, fermion_ratio_limit, ratio_approx, ratio_exact

RATIO_COLUMNS = [
    "statistics", "eta", "particles", "modes", "exact_suppressed", "exact_total",
    "exact_ratio", "approx_ratio", "approx_limit", "error",
]

FIGURE3_BOSON_ETAS = range(1, 7)
FIGURE3_FERMION_PARTICLES = (4, 16, 64)


def formula_row(statistics: Statistics, eta: int, particles: int | None, modes: int | None) -> RatioReport:
    try:
        approx = ratio_approx(eta, statistics, particles, modes)
        limit = fermion_ratio_limit(eta, particles) if statistics == Statistics.FERMION else None
    except ValueError as exc:
        return RatioReport(statistics=statistics, eta=eta, particles=particles, modes=modes, error=str(exc))
    return RatioReport(statistics=statistics, eta=eta, particles=particles, modes=modes,
                       approx_ratio=approx, approx_limit=limit)


def figure3_rows() -> list[RatioReport]:
    rows = [formula_row(Statistics.BOSON, eta, None, None) for eta in FIGURE3_BOSON_ETAS]
    for particles in FIGURE3_FERMION_PARTICLES:
        eta = 1
        while particles % (2 ** eta) == 0:
            rows.append(formula_row(Statistics.FERMION, eta, particles, None))
            eta += 1
    return rows


class Command(HyperwalkCommand):
    help = "Report predicted and exactly counted suppression ratios"

    command_name = CommandName.RATIO
    arguments = ("d", "m", "initial", "stats", "out", "format")

    def add_command_arguments(self, parser):
        parser.add_argument("--eta", type=int, action="append", default=[], help="Independent symmetries (repeatable).")
        parser.add_argument("--particles", type=int, action="append", default=[], help="Particle number N (repeatable).")
        parser.add_argument("--modes", type=int, default=None, help="Mode count n for the exact fermionic form.")
        parser.add_argument("--preset", choices=["figure3"], default=None, help="Built-in parameter grid.")

    def run(self, cfg, options):
        if options.get("preset") == "figure3":
            rows = figure3_rows()
        elif cfg.initial is not None:
            rows = [ratio_exact(cfg.initial, cfg.law_hypercube(), cfg.statistics)]
        else:
            etas = options.get("eta") or []
            if not etas:
                raise ValueError("ratio needs --initial, --eta or --preset.")
            particles = options.get("particles") or [None]
            modes = options.get("modes")
            rows = [formula_row(cfg.statistics, eta, n_part, modes) for eta in etas for n_part in particles]

        with self.open_output(cfg.output_path) as stream:
            if cfg.format == OutputFormat.JSON:
                write_json(stream, [row.to_dict() for row in rows])
            else:
                write_csv(stream, RATIO_COLUMNS, (_csv_row(row) for row in rows))

        errors = sum(1 for row in rows if row.error)
        self.notice(cfg, f"{len(rows)} ratio rows ({errors} with errors)", self.style.SUCCESS)


def _blank(value):
    return "" if value is None else value


def _csv_row(row: RatioReport) -> list:
    exact = row.exact_ratio
    return [
        Statistics(row.statistics).value,
        row.eta,
        _blank(row.particles),
        _blank(row.modes),
        _blank(row.exact_suppressed),
        _blank(row.exact_total),
        "" if exact is None else format_probability(float(exact)),
        format_probability(row.approx_ratio),
        format_probability(row.approx_limit),
        row.error,
    ]
