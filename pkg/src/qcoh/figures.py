"""Figure datasets as rows of numbers (plotting happens elsewhere).

fig2  Bloch states with x = 0.4 on a 0.02 (y, z) grid inside the ball,
      split in the computational and the ``|+>, |->`` bases.
fig3  the z line at x = 0.4, y = 0.2 with step 0.005.
fig5  duality budget of the bit-flip example for p in [0, 1], step 0.01.
"""

from __future__ import annotations

import csv
import io
from typing import Iterable, Sequence

from .channels import bitflip_duality_sweep
from .coherence import computational_basis, fourier_basis, theorem1_split
from .qstate import bloch_to_qubit

FIG2_COLUMNS = ("y", "z", "C", "C_comp", "res_comp", "C_x", "res_x")
FIG3_COLUMNS = ("z", "C", "C_comp", "res_comp", "C_x", "res_x")
FIG5_COLUMNS = ("p", "wave", "particle", "entanglement")

FIG_X = 0.4
FIG3_Y = 0.2


def _grid(lo: float, hi: float, step: float) -> list[float]:
    n = int(round((hi - lo) / step))
    return [round(lo + k * step, 10) + 0.0 for k in range(n + 1)]


def _inside(x: float, y: float, z: float) -> bool:
    return x * x + y * y + z * z <= 1.0 + 1e-12


def _splits(x: float, y: float, z: float) -> tuple[float, ...]:
    rho = bloch_to_qubit((x, y, z))
    comp = theorem1_split(rho, computational_basis(2))
    plus = theorem1_split(rho, fourier_basis(2))
    return (comp.total, comp.basis_part, comp.residual, plus.basis_part, plus.residual)


def fig2_rows(step: float = 0.02) -> list[tuple[float, ...]]:
    rows = []
    for y in _grid(-1.0, 1.0, step):
        for z in _grid(-1.0, 1.0, step):
            if _inside(FIG_X, y, z):
                rows.append((y, z) + _splits(FIG_X, y, z))
    return rows


def fig3_rows(step: float = 0.005) -> list[tuple[float, ...]]:
    return [(z,) + _splits(FIG_X, FIG3_Y, z) for z in _grid(-1.0, 1.0, step) if _inside(FIG_X, FIG3_Y, z)]


def fig5_rows(step: float = 0.01) -> list[tuple[float, ...]]:
    return [(r.p, r.wave, r.particle, r.entanglement) for r in bitflip_duality_sweep(_grid(0.0, 1.0, step))]


FIGURES = {
    "fig2": (FIG2_COLUMNS, fig2_rows),
    "fig3": (FIG3_COLUMNS, fig3_rows),
    "fig5": (FIG5_COLUMNS, fig5_rows),
}


def fmt(v: float) -> str:
    """10 significant digits, no negative zero."""
    return format(float(v) + 0.0, ".10g")


def to_csv(columns: Sequence[str], rows: Iterable[Sequence[float]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([fmt(v) for v in r])
    return buf.getvalue()


def figure_csv(which: str) -> str:
    columns, make = FIGURES[which]
    return to_csv(columns, make())
