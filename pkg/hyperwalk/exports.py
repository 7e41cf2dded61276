"""
CSV and JSON writers for command output.

Probabilities are written with 17 significant digits so a float survives
the round trip bit-exactly; CSV uses dot decimals and "\\n" line endings
regardless of platform or locale. Comment lines starting with "#" carry
run metadata ahead of the CSV header.
"""
import csv
import json
from typing import Iterable, TextIO

DISTRIBUTION_COLUMNS = ["final_state", "probability", "suppressed", "suppressed_predicted", "classification_set"]
PREDICTION_COLUMNS = ["final_state", "suppressed_predicted", "classification_set", "suppressing_sets"]


def format_probability(value: float | None) -> str:
    if value is None:
        return ""
    return format(float(value), ".17g")


def write_csv(stream: TextIO, columns: list[str], rows: Iterable[list], comments: dict | None = None):
    for key, value in (comments or {}).items():
        stream.write(f"# {key}={value}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(row)


def write_json(stream: TextIO, payload):
    json.dump(payload, stream, indent=2)
    stream.write("\n")
