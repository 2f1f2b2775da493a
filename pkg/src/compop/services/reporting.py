"""CSV and JSON writers for run outputs.

CSV files open with a ``# compop-csv v1 <kind>`` header line; floats are
written with 17 significant digits so a rerun with the same RunConfig
produces byte-identical files.
"""

import csv
import io
import math
import os

from pydantic import BaseModel

from compop.models import (
    DecayReport,
    LowerBoundReport,
    PullbackProfile,
    RunConfig,
    TransferReport,
)

CSV_VERSION = "v1"


def fmt(x: float | int | None) -> str:
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    return "%.17g" % x


def _render(kind: str, header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    buf.write(f"# compop-csv {CSV_VERSION} {kind}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(x) for x in row])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Per-report CSV layouts
# ---------------------------------------------------------------------------


def decay_csv(report: DecayReport) -> str:
    """n, a_n and the three model predictions (blank where undefined)."""
    fits = report.fits
    rows = []
    for n, a in enumerate(report.singular_values, start=1):
        power = plain = geometric = None
        if fits is not None:
            geometric = math.exp(fits.geometric.log_r * n + fits.geometric.c)
            plain = math.exp(fits.power_plain.alpha * math.log(n) + fits.power_plain.gamma)
            if n >= 2:
                p = fits.power
                power = math.exp(p.alpha * math.log(n) + p.beta * math.log(math.log(n)) + p.gamma)
        change = report.convergence[n - 1] if n <= len(report.convergence) else None
        rows.append([n, a, power, plain, geometric, change])
    return _render(
        "decay",
        ["n", "a_n", "power_log", "power", "geometric", "relative_change_2n"],
        rows,
    )


def lowerbound_csv(report: LowerBoundReport) -> str:
    rows = [[r.n, r.lower_bound, r.normalized, r.preimages, r.jitter] for r in report.rows]
    return _render(
        f"lowerbound {report.construction} d={report.d}",
        ["n", "lower_bound", "normalized", "preimages", "jitter"],
        rows,
    )


def carleson_csv(profile: PullbackProfile) -> str:
    rows = [
        [eps, m, r, s, e]
        for eps, m, r, s, e in zip(
            profile.epsilons, profile.max_masses, profile.ratios, profile.normalized, profile.stderr
        )
    ]
    return _render(
        f"carleson d={profile.d} samples={profile.samples} seed={profile.seed}",
        ["eps", "max_box_mass", "mass_over_eps", "mass_over_eps_pow", "stderr"],
        rows,
    )


def transfer_csv(report: TransferReport) -> str:
    rows = []
    for n, (disc, transferred, compressed) in enumerate(
        zip(report.disc_values, report.transferred_values, report.compression_values), start=1
    ):
        ratio = report.ratios[n - 1] if n <= len(report.ratios) else None
        rows.append([n, disc, transferred, ratio, compressed])
    return _render("transfer", ["n", "disc_a_n", "transferred_a_n", "ratio", "compression_a_n"], rows)


CSV_WRITERS = {
    DecayReport: decay_csv,
    LowerBoundReport: lowerbound_csv,
    PullbackProfile: carleson_csv,
    TransferReport: transfer_csv,
}


def to_csv(report: BaseModel) -> str:
    try:
        writer = CSV_WRITERS[type(report)]
    except KeyError:
        raise TypeError(f"no CSV layout for {type(report).__name__}") from None
    return writer(report)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


class RunRecord(BaseModel):
    """JSON output: the config that produced a result plus the result."""

    config: RunConfig
    result: dict


def to_json(config: RunConfig, report: BaseModel) -> str:
    record = RunRecord(config=config, result=report.model_dump(mode="json"))
    return record.model_dump_json(indent=2) + "\n"


def write_text(path: str, text: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
