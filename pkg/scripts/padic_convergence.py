#!/usr/bin/env python3
"""Tabulate p-adic error valuations for the default integrand battery.

For each (p, q) context this prints, per integrand, the truncated-sum
error valuation at every level N, the reference value, and whether the
profile meets the monotone-growth criterion. 'inf' rows mean the
truncation is already exact at that level.
"""

import argparse
import sys

from qgenocchi import padic
from qgenocchi.genocchi import TablePool
from qgenocchi.qnum import format_rat
from qgenocchi.verify import default_integrand_battery


def describe(spec: padic.IntegrandSpec) -> str:
    bits = [spec.kind]
    if spec.kind == padic.KIND_GENOCCHI_KERNEL:
        bits.append(f"n={spec.n} x={spec.x}")
    elif spec.kind == padic.KIND_REFLECTED_KERNEL:
        bits.append(f"n={spec.n}")
    elif spec.kind == padic.KIND_BERNSTEIN_PRODUCT:
        bits.append(f"k={spec.k} degrees={','.join(map(str, spec.degrees))}")
    bits.append(f"w=({spec.w.alpha},{spec.w.beta})")
    return " ".join(bits)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--contexts",
        default="3:4,3:7,5:6",
        help="comma-separated p:q pairs (default: 3:4,3:7,5:6)",
    )
    args = parser.parse_args()

    contexts = []
    for part in args.contexts.split(","):
        p_text, _, q_text = part.partition(":")
        contexts.append((int(p_text), int(q_text)))

    pool = TablePool()
    all_ok = True
    for p, q_value in contexts:
        ctx = padic.PadicContext.make(p, q_value)
        print(f"== p={p} q={q_value} (levels 1..{ctx.n_max})")
        for spec in default_integrand_battery():
            reference = padic.reference_value(spec, ctx.q, pool)
            profile = padic.convergence_profile(spec, ctx, reference)
            ok = padic.monotone_convergent(profile)
            all_ok = all_ok and ok
            vals = " ".join(f"{v}" for v in profile.valuations)
            print(
                f"  {'ok ' if ok else 'BAD'} v(err)=[{vals}]  "
                f"ref={format_rat(reference)}  {describe(spec)}"
            )
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
