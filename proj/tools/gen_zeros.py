"""Write the first N zeta-zero ordinates, one per line.

Uses python-flint (arb), whose zeta_zeros routine isolates each zero with a
certified error ball; the midpoint is printed to 15 significant digits.
"""
import argparse
import sys

import flint


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("count", type=int)
    parser.add_argument("--out", default="-")
    parser.add_argument("--batch", type=int, default=100)
    args = parser.parse_args()

    out = sys.stdout if args.out == "-" else open(args.out, "w")
    out.write(f"# first {args.count} ordinates of nontrivial zeta zeros (python-flint {flint.__version__}, arb)\n")
    k = 1
    while k <= args.count:
        m = min(args.batch, args.count - k + 1)
        for z in flint.acb.zeta_zeros(k, m):
            out.write(z.imag.mid().str(15, radius=False) + "\n")
        out.flush()
        k += m
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    main()
