"""
Shared command-line plumbing for the hyperwalk management commands.

Every command parses the same flag family into a ``RunConfig``, runs the
engine and maps failures onto fixed exit codes:

    0  success / verification PASS
    1  usage or validation error (argparse errors included)
    2  verification failure
    3  resource bound exceeded
"""
import logging
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from django.db import models

from .fock import ModeOccupation, ResourceBoundError
from .interference import Statistics
from .symmetry import SymmetrySet
from .unitary import HypercubeSpec, load_subunitary, random_subunitary

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2
EXIT_RESOURCE = 3

MAX_TOLERANCE = 1e-4


class CommandName(models.TextChoices):
    UNITARY = "unitary", "Build unitary"
    PREDICT = "predict", "Predict suppression"
    VERIFY = "verify", "Verify suppression law"
    FIGURE4 = "figure4", "Three-state landscape on the 3-cube"
    RATIO = "ratio", "Suppression ratios"
    DISTRIBUTION = "distribution", "Full distribution"


class OutputFormat(models.TextChoices):
    CSV = "csv", "CSV"
    JSON = "json", "JSON"


@dataclass(frozen=True)
class RunConfig:
    command: CommandName
    d: int | None = None
    m: int = 1
    subunitary_path: Path | None = None
    initial: ModeOccupation | None = None
    statistics: Statistics = Statistics.BOSON
    tolerance: float = 1e-10
    output_path: Path | None = None
    format: OutputFormat = OutputFormat.CSV
    seed: int | None = None
    workers: int = 1
    symmetry: SymmetrySet | None = None

    def __post_init__(self):
        object.__setattr__(self, "command", CommandName(self.command))
        object.__setattr__(self, "statistics", Statistics(self.statistics))
        object.__setattr__(self, "format", OutputFormat(self.format))
        if not 0 < self.tolerance <= MAX_TOLERANCE:
            raise ValueError(f"Tolerance must lie in (0, {MAX_TOLERANCE:g}], got {self.tolerance:g}.")
        if self.d is not None and self.d < 1:
            raise ValueError(f"Hypercube dimension must be >= 1, got {self.d}.")
        if self.m < 1:
            raise ValueError(f"Subgraph size must be >= 1, got {self.m}.")
        if self.workers < 1:
            raise ValueError(f"Worker count must be >= 1, got {self.workers}.")
        if self.initial is not None:
            if self.d is None:
                raise ValueError("An initial state needs the hypercube dimension --d.")
            expected = (2 ** self.d) * self.m
            if self.initial.n != expected:
                raise ValueError(
                    f"Initial state {self.initial} has {self.initial.n} modes; "
                    f"d={self.d}, m={self.m} needs {expected}."
                )
        if self.symmetry is not None and self.d is not None and self.symmetry.max_segmentation > 2 ** self.d:
            raise ValueError(f"Symmetry set {self.symmetry} exceeds 2^d = {2 ** self.d}.")

    @property
    def n(self) -> int:
        return (2 ** self.d) * self.m

    @property
    def symmetries(self) -> list[SymmetrySet] | None:
        """The --sym restriction, or None for the full invariance group."""
        return None if self.symmetry is None else [self.symmetry]

    def hypercube(self) -> HypercubeSpec:
        """The hypercube described by --d/--m/--sub (or a seeded random subunitary)."""
        if self.d is None:
            raise ValueError("This command needs the hypercube dimension --d.")
        if self.m == 1:
            return HypercubeSpec(self.d)
        if self.subunitary_path is not None:
            sub = load_subunitary(self.subunitary_path)
        elif self.seed is not None:
            sub = random_subunitary(self.m, self.seed)
            logger.info("Using Haar-random %dx%d subunitary from seed %d", self.m, self.m, self.seed)
        else:
            raise ValueError(f"m={self.m} needs a subunitary: pass --sub <path> or --seed <int>.")
        return HypercubeSpec(self.d, self.m, sub)

    def law_hypercube(self) -> HypercubeSpec:
        """Hypercube for prediction only; verdicts never read the subunitary."""
        if self.d is None:
            raise ValueError("This command needs the hypercube dimension --d.")
        return HypercubeSpec(self.d, self.m, np.eye(self.m) if self.m > 1 else None)


class _StdoutStream:
    """File-like shim so csv/json writers can target a command's stdout."""

    def __init__(self, wrapper):
        self._wrapper = wrapper

    def write(self, text):
        self._wrapper.write(text, ending="")


class HyperwalkCommand(BaseCommand):
    """Base class: common flags, RunConfig construction and exit-code mapping."""

    command_name: CommandName
    # flags from the shared family this command accepts
    arguments: tuple[str, ...] = ()
    requires_initial = False

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)

        def usage_error(message):
            if parser.called_from_command_line:
                parser.print_usage(sys.stderr)
                sys.stderr.write(f"{parser.prog}: error: {message}\n")
                sys.exit(EXIT_USAGE)
            raise CommandError(f"Error: {message}", returncode=EXIT_USAGE)

        parser.error = usage_error
        return parser

    def add_arguments(self, parser):
        flags = set(self.arguments)
        if "d" in flags:
            parser.add_argument("--d", type=int, required=self.requires_initial,
                                help="Hypercube dimension (n = 2^d * m modes).")
        if "m" in flags:
            parser.add_argument("--m", type=int, default=1, help="Subgraph size (default 1: bare hypercube).")
        if "sub" in flags:
            parser.add_argument("--sub", type=Path, default=None, help="Subunitary JSON file for m > 1.")
        if "initial" in flags:
            parser.add_argument("--initial", type=str, required=self.requires_initial,
                                help='Initial occupation list, e.g. "3,0,1,0,0,3,0,1".')
        if "stats" in flags:
            parser.add_argument("--stats", choices=Statistics.values, default=Statistics.BOSON.value,
                                help="Particle statistics.")
        if "tol" in flags:
            parser.add_argument("--tol", type=float, default=None,
                                help="Suppression threshold (default HYPERWALK_TOLERANCE).")
        if "out" in flags:
            parser.add_argument("--out", type=Path, default=None, help="Output path (default stdout).")
        if "format" in flags:
            parser.add_argument("--format", choices=OutputFormat.values, default=OutputFormat.CSV.value,
                                help="Output format.")
        if "workers" in flags:
            parser.add_argument("--workers", type=int, default=None,
                                help="Worker processes (default HYPERWALK_WORKERS).")
        if "seed" in flags:
            parser.add_argument("--seed", type=int, default=None, help="Seed for random subunitaries.")
        if "sym" in flags:
            parser.add_argument("--sym", type=str, default=None,
                                help='Restrict verdicts to one symmetry set, e.g. "2,8".')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def build_config(self, options) -> RunConfig:
        initial = options.get("initial")
        tolerance = options.get("tol")
        workers = options.get("workers")
        m = options.get("m")
        sym = options.get("sym")
        return RunConfig(
            command=self.command_name,
            d=options.get("d"),
            m=1 if m is None else m,
            subunitary_path=options.get("sub"),
            initial=ModeOccupation.parse(initial) if initial else None,
            statistics=options.get("stats") or Statistics.BOSON,
            tolerance=settings.HYPERWALK_TOLERANCE if tolerance is None else tolerance,
            output_path=options.get("out"),
            format=options.get("format") or OutputFormat.CSV,
            seed=options.get("seed"),
            workers=settings.HYPERWALK_WORKERS if workers is None else workers,
            symmetry=SymmetrySet.parse(sym) if sym else None,
        )

    def handle(self, *args, **options):
        try:
            cfg = self.build_config(options)
            self.run(cfg, options)
        except CommandError:
            raise
        except ResourceBoundError as exc:
            raise CommandError(f"Resource bound: {exc}", returncode=EXIT_RESOURCE) from exc
        except (ValueError, OSError) as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE) from exc

    def run(self, cfg: RunConfig, options):
        raise NotImplementedError

    @contextmanager
    def open_output(self, path: Path | None):
        if path is None:
            yield _StdoutStream(self.stdout)
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh

    def notice(self, cfg: RunConfig, message: str, style=None):
        """Status text: stdout when data goes to a file, stderr otherwise."""
        styled = style(message) if style else message
        if cfg.output_path is None:
            self.stderr.write(styled)
        else:
            self.stdout.write(styled)
