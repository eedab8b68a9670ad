#!/usr/bin/env python3
"""Regenerate the bundled b-files in fixtures/oeis.

Values come from the triangle recurrences and exact fractions, not from the
closed forms used by the Rust crate. Run from the repository root:

    python3 tools/gen_oeis_fixtures.py [outdir]
"""

import sys
from fractions import Fraction
from pathlib import Path

ROWS = 40
TERMS = 60


def b_rows(n_rows):
    # A039598 recurrence: T(n,k) = T(n-1,k-1) + 2T(n-1,k) + T(n-1,k+1)
    rows = [[1]]
    while len(rows) < n_rows:
        prev = rows[-1] + [0, 0]
        row = []
        for k in range(len(rows[-1]) + 1):
            left = prev[k - 1] if k > 0 else 0
            row.append(left + 2 * prev[k] + prev[k + 1])
        rows.append(row)
    return rows


def a_rows(n_rows):
    # A039599 recurrence: first column T(n,0) = T(n-1,0) + T(n-1,1)
    rows = [[1]]
    while len(rows) < n_rows:
        prev = rows[-1] + [0, 0]
        row = [prev[0] + prev[1]]
        for k in range(1, len(rows[-1]) + 1):
            row.append(prev[k - 1] + 2 * prev[k] + prev[k + 1])
        rows.append(row)
    return rows


def weighted(row, w):
    return sum(Fraction(x) * w ** (k + 1) for k, x in enumerate(row))


def as_int(x):
    assert x.denominator == 1, x
    return x.numerator


def sequences():
    brows = b_rows(TERMS + 1)  # brows[n-1] is row n
    arows = a_rows(TERMS + 1)  # arows[n] is row n
    q, mq = Fraction(1, 4), Fraction(-1, 4)
    alpha = [1, 5]
    while len(alpha) < TERMS:
        alpha.append(4 * (alpha[-1] + alpha[-2]))
    return {
        "A086347": (1, alpha),
        "A039598": (0, [x for r in brows[:ROWS] for x in r]),
        "A039599": (0, [x for r in arows[:ROWS] for x in r]),
        "A194725": (1, [as_int(4**n * weighted(brows[n - 1], q)) for n in range(1, TERMS + 1)]),
        "A130970": (0, [as_int(4 ** (n + 1) * weighted(arows[n], q)) for n in range(TERMS)]),
        "A051550": (1, [as_int(-((-4) ** n) * weighted(brows[n - 1], mq)) for n in range(1, TERMS + 1)]),
        "A132863": (0, [as_int(-(4 ** (n + 1)) * weighted(arows[n], mq)) for n in range(TERMS)]),
    }


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "fixtures/oeis")
    out.mkdir(parents=True, exist_ok=True)
    for ident, (offset, values) in sequences().items():
        lines = [f"# {ident}, generated by tools/gen_oeis_fixtures.py"]
        lines += [f"{offset + i} {v}" for i, v in enumerate(values)]
        (out / f"b{ident[1:]}.txt").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
