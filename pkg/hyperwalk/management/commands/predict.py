"""
Classify every final state by the suppression law of an initial state.

The header carries eta and the invariance group; each record lists the
symmetry sets predicting suppression. Initial states without symmetry
produce a header marked law_applicable=false and no records. --sym limits
the verdicts to one set the initial state must be invariant under.

Usage:
    python manage.py predict --d 3 --initial 3,0,1,0,0,3,0,1
    python manage.py predict --d 1 --m 3 --initial 2,0,0,2,0,0 --format json
    python manage.py predict --d 3 --initial 0,0,2,2,0,0,2,2 --sym 2,8
"""
from hyperwalk.cli import CommandName, HyperwalkCommand, OutputFormat
from hyperwalk.exports import PREDICTION_COLUMNS, write_csv, write_json
from hyperwalk.fock import check_enumeration, count_finals
from hyperwalk.interference import Statistics
from hyperwalk.supplaw import check_law_statistics, classify, resolve_symmetries
from hyperwalk.symmetry import eta, generators, invariance_group


class Command(HyperwalkCommand):
    help = "Predict suppressed final states for an initial state"

    command_name = CommandName.PREDICT
    arguments = ("d", "m", "initial", "stats", "sym", "out", "format")
    requires_initial = True

    def run(self, cfg, options):
        initial = cfg.initial
        check_law_statistics(initial, cfg.statistics)
        spec = cfg.law_hypercube()
        group = invariance_group(initial, cfg.d, cfg.m)
        verdict_sets = resolve_symmetries(initial, spec, cfg.symmetries)
        independent = eta(initial, cfg.d, cfg.m)
        applicable = bool(verdict_sets)
        fermionic = cfg.statistics == Statistics.FERMION
        check_enumeration(count_finals(initial.n, initial.particles, fermionic))

        records = []
        if applicable:
            records = list(classify(initial, spec, cfg.statistics, verdict_sets))

        meta = {
            "initial": str(initial),
            "statistics": cfg.statistics.value,
            "eta": independent,
            "invariance_group": ";".join(str(p) for p in group),
            "generators": ";".join(str(p) for p in generators(group)),
            "verdict_sets": ";".join(str(p) for p in verdict_sets),
            "law_applicable": "true" if applicable else "false",
        }
        with self.open_output(cfg.output_path) as stream:
            if cfg.format == OutputFormat.JSON:
                write_json(stream, {
                    "initial": initial.to_json(),
                    "statistics": cfg.statistics.value,
                    "eta": independent,
                    "invariance_group": [p.to_json() for p in group],
                    "verdict_sets": [p.to_json() for p in verdict_sets],
                    "law_applicable": applicable,
                    "records": [
                        {
                            "final_state": rec.final.to_json(),
                            "suppressed_predicted": rec.any_suppressed,
                            "classification_set": rec.classification,
                            "suppressing_sets": [p.to_json() for p in rec.suppressing_sets],
                        }
                        for rec in records
                    ],
                })
            else:
                write_csv(stream, PREDICTION_COLUMNS, (
                    [
                        str(rec.final),
                        int(rec.any_suppressed),
                        rec.classification,
                        ";".join(str(p) for p in rec.suppressing_sets),
                    ]
                    for rec in records
                ), comments=meta)

        if applicable:
            suppressed = sum(rec.any_suppressed for rec in records)
            self.notice(cfg, f"eta={independent}: {suppressed}/{len(records)} final states predicted suppressed",
                        self.style.SUCCESS)
        else:
            self.notice(cfg, f"Law inapplicable: {initial} has no hypercube symmetry", self.style.WARNING)

