"""
Build a hypercube transfer unitary and write it as JSON.

Usage:
    python manage.py unitary --d 3 --out hc3.json
    python manage.py unitary --d 1 --m 3 --sub tri.json
    python manage.py unitary --d 2 --m 2 --seed 7 --method closed
"""
import numpy as np

from hyperwalk.cli import CommandName, HyperwalkCommand
from hyperwalk.exports import write_json
from hyperwalk.unitary import (
    build_generalized,
    build_hamiltonian_oracle,
    build_unitary,
    unitarity_residual,
    unitary_to_json,
)

METHODS = ("default", "closed", "hamiltonian")


class Command(HyperwalkCommand):
    help = "Build the (generalized) hypercube unitary and write it in the JSON matrix schema"

    command_name = CommandName.UNITARY
    arguments = ("d", "m", "sub", "seed", "out")

    def add_command_arguments(self, parser):
        parser.add_argument(
            "--method",
            choices=METHODS,
            default="default",
            help="default: tensor product (m=1) / element formula (m>1); "
                 "closed: element formula; hamiltonian: exp(i kappa t A_d) at t = pi/(4 kappa), m=1 only.",
        )

    def run(self, cfg, options):
        if cfg.d is None:
            raise ValueError("unitary needs --d.")
        spec = cfg.hypercube()
        method = options.get("method") or "default"
        if method == "closed":
            mat = build_generalized(spec)
        elif method == "hamiltonian":
            if spec.is_generalized:
                raise ValueError("The Hamiltonian construction covers bare hypercubes only (m=1).")
            mat = build_hamiltonian_oracle(spec.d, 1.0, np.pi / 4)
        else:
            mat = build_unitary(spec)

        with self.open_output(cfg.output_path) as stream:
            write_json(stream, unitary_to_json(mat, spec.d, spec.m))
        residual = unitarity_residual(mat)
        self.notice(cfg, f"{spec.n}x{spec.n} unitary (d={spec.d}, m={spec.m}); "
                         f"unitarity residual {residual:.3e}", self.style.SUCCESS)
