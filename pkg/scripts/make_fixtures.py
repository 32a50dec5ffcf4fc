"""Regenerate the JSON fixtures shipped in ``src/paf/fixtures``."""
from pathlib import Path

import numpy as np

from paf import io
from paf.autocorr import CorrMatrixPoly, correlate
from paf.polyring import BoundedPoly
from paf.synthetic import worked_example_signals, random_signals

OUT = Path(__file__).resolve().parents[1] / "src" / "paf" / "fixtures"


def write(name, doc):
    (OUT / name).write_text(io.dumps(doc) + "\n")


def main():
    OUT.mkdir(exist_ok=True)
    x = worked_example_signals()
    write("example_signals.json", io.signals_to_doc(x))
    write("example_gamma.json", io.gamma_to_doc(correlate(x)))

    rng = np.random.default_rng(20240611)
    y = random_signals(rng, 3, 8)
    write("coprime_signals.json", io.signals_to_doc(y))
    write("coprime_gamma.json", io.gamma_to_doc(correlate(y)))

    a = BoundedPoly([0, -1, 0.5, 0.5, 0, 0])
    write("example_poly.json", io.poly_to_doc(a))
    write("gcd_polys.json", {"polys": [
        io.poly_to_doc(BoundedPoly([2, 3, 1])),     # (z + 1)(z + 2)
        io.poly_to_doc(BoundedPoly([3, 4, 1])),     # (z + 1)(z + 3)
    ]})

    c = np.array(correlate(y).coeffs)
    c[0, 1, 3] += 0.25
    write("nonpalindromic_gamma.json", io.gamma_to_doc(CorrMatrixPoly(c)))

    (OUT / "malformed_syntax.json").write_text('{"K": 2, "N": 3,\n "signals": [[[1, 0], [0, 1]\n')
    write("malformed_missing_field.json", {"K": 1, "signals": [[[1.0, 0.0], [2.0, 0.0]]]})
    write("malformed_length.json", {"K": 1, "N": 3, "signals": [[[1.0, 0.0], [2.0, 0.0]]]})
    write("malformed_pair.json", {"K": 1, "N": 2, "signals": [[[1.0, 0.0], "2+1j"]]})


if __name__ == "__main__":
    main()
