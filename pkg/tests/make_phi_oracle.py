"""Regenerate tests/data/phi_oracle.csv.

Phi(z) = 1/2 + pdf(z) * sum_{k>=0} z^(2k+1) / (1*3*...*(2k+1)), summed in
80-digit arithmetic and cross-checked against mpmath.ncdf. Run once; the
acceptance suite only reads the stored values.
"""

from pathlib import Path

import mpmath

N = 10_000
LO, HI = -10.0, 10.0
OUT = Path(__file__).parent / "data" / "phi_oracle.csv"


def phi_series(z: float) -> mpmath.mpf:
    z = mpmath.mpf(z)
    term = z
    total = term
    k = 0
    while abs(term) > mpmath.mpf(10) ** -70 * max(abs(total), 1):
        k += 1
        term *= z * z / (2 * k + 1)
        total += term
    return mpmath.mpf(1) / 2 + mpmath.npdf(z) * total


def main() -> None:
    mpmath.mp.dps = 80
    lines = ["z,phi"]
    for i in range(N):
        z = LO + (HI - LO) * i / (N - 1)
        value = phi_series(z)
        assert abs(value - mpmath.ncdf(z)) < mpmath.mpf(10) ** -40
        lines.append(f"{z!r},{float(value)!r}")
    OUT.write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
