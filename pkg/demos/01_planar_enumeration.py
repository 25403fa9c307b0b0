"""Enumerate every extreme point of the m-linear unit ball on R^2.

For n = 2 the extreme points admit a closed description: one anchored
orthogonal basis of tensor vertices exists, every sign pattern on it is
solvable, and the orbit of the solutions under the sign group fills out
exactly 2^(2^m) points. This script walks m = 1..4, checks the count
formula, and prints a few sample points with their exact coordinates.

Run:  python3 demos/01_planar_enumeration.py [--max-m 4]
"""

import argparse
import time
from fractions import Fraction

from extremeforms.core import tensor_vertex_count
from extremeforms.search import planar_extreme_points


def format_point(point):
    return "(" + ", ".join(str(c) for c in point.coeffs) + ")"


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-m", type=int, default=4,
                        help="largest arity to enumerate (default 4)")
    args = parser.parse_args()

    for m in range(1, args.max_m + 1):
        started = time.perf_counter()
        es = planar_extreme_points(m)
        wall = time.perf_counter() - started

        # ------------------------------------------------------------------
        # count check: 2^(2^m) extreme points, against |V| = 2^(2m - m + 1)
        # tensor vertices
        # ------------------------------------------------------------------
        expected = 2 ** (2 ** m)
        assert len(es) == expected
        print(f"m = {m}: {len(es)} extreme points "
              f"(= 2^{2 ** m}), |V| = {tensor_vertex_count(m, 2)}, "
              f"{wall:.2f} s")

        # ------------------------------------------------------------------
        # denominators divide 2^m and every coordinate is a reduced rational
        # ------------------------------------------------------------------
        denominators = sorted({c.denominator
                               for p in es.points for c in p.coeffs})
        assert all((2 ** m) % d == 0 for d in denominators)
        print(f"       denominators seen: {denominators}")

        # the canonical order puts the most negative coefficient tuples
        # first; show the two ends and the midpoint of the list
        sample = [es.points[0], es.points[len(es) // 2], es.points[-1]]
        for point in sample:
            total = sum(point.coeffs)
            assert isinstance(total, Fraction)
            print(f"       {format_point(point)}  coefficient sum {total}")
        print()


if __name__ == "__main__":
    main()
