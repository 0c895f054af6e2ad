#!/usr/bin/env python3
"""Print quantum multiplication tables and plane-curve counts as JSON.

Usage: python scripts/quantum_tables.py [--space gr:2:4] [--nd-max 5]
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from gwcalc import ring  # noqa: E402
from gwcalc.quantum import rim_hook_product, wdvv_nd  # noqa: E402


def product_table(space):
    k, n = space.params
    parts = ring.rectangle_partitions(k, n - k)
    labels = [bc.label for bc in ring.basis(space)]
    table = {}
    for i, lam in enumerate(parts):
        for j in range(i, len(parts)):
            qc = rim_hook_product(lam, parts[j], space)
            entry = {}
            for power, elem in qc.terms:
                for idx, coeff in elem.coeffs:
                    key = labels[idx] if power == 0 else f"q^{power}*{labels[idx]}"
                    entry[key] = str(coeff)
            table[f"{labels[i]} * {labels[j]}"] = entry
    return table


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--space", default="gr:2:4")
    parser.add_argument("--nd-max", type=int, default=5)
    args = parser.parse_args()
    space = ring.make_space(args.space)
    if space.kind != ring.GRASSMANNIAN:
        raise SystemExit("--space must name a Grassmannian, e.g. gr:2:4")
    payload = {
        "space": str(space),
        "quantum_products": product_table(space),
        "plane_curve_counts": {
            str(d): str(wdvv_nd(d)) for d in range(1, args.nd_max + 1)
        },
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
