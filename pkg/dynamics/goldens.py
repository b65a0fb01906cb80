"""
Frozen recurrence constants.

Each row bounds the maximum ratio of one profile over n_from <= n <= n_max
and records the window it was frozen on.
"""
import csv
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from django.conf import settings

from dynamics.exceptions import ConfigError, ParseError

logger = logging.getLogger(__name__)

FIELDS = ["name", "bound", "n_from", "n_max", "window", "source"]


@dataclass(frozen=True)
class Golden:
    name: str
    bound: Fraction
    n_from: int
    n_max: int
    window: int
    source: str = ""

    def row(self):
        return {
            "name": self.name, "bound": str(self.bound), "n_from": self.n_from,
            "n_max": self.n_max, "window": self.window, "source": self.source,
        }


def golden_name(shift_name, jump=None):
    return f"{shift_name}/base" if jump is None else f"{shift_name}/{jump.name}"


def load_goldens(path=None):
    path = Path(path or settings.WORKBENCH_GOLDENS)
    if not path.exists():
        raise ConfigError(f"goldens file {path} does not exist")
    goldens = {}
    with path.open(newline="") as handle:
        for lineno, row in enumerate(csv.DictReader(line for line in handle if not line.startswith("#")), 2):
            try:
                golden = Golden(
                    row["name"], Fraction(row["bound"]), int(row["n_from"]),
                    int(row["n_max"]), int(row["window"]), row.get("source") or "",
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"{path} row {lineno}: {exc}") from exc
            goldens[golden.name] = golden
    return goldens


def write_goldens(goldens, path=None):
    path = Path(path or settings.WORKBENCH_GOLDENS)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=FIELDS, lineterminator="\n")
        writer.writeheader()
        for name in sorted(goldens):
            writer.writerow(goldens[name].row())
    logger.info("wrote %d goldens to %s", len(goldens), path)
