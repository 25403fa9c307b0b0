"""Sharp constants of classical multilinear inequalities, computed exactly.

Because the unit ball of m-linear forms is a polytope, any convex
functional attains its maximum over the ball at an extreme point, so a
finite scan over the enumerated extreme set computes the sharp constant
of an inequality together with an explicit extremal form. This script
prints the Bohnenblust-Hille and mixed Littlewood constants for small
shapes, the Khinchin constant A_q across its branch point, and the
two-valued slot collapse constants.

Run:  python3 demos/03_sharp_constants.py
"""

import math

from extremeforms.constants import (
    bh_constant,
    khinchin_Aq,
    khinchin_branch_point,
    mixed_littlewood_constant,
    two_slot_constant,
)
from extremeforms.search import extreme_points


def show(report):
    note = f"  (= {report.exact_note})" if report.exact_note else ""
    coeffs = ", ".join(str(c) for c in report.argmax.coeffs)
    print(f"{report.name}(m={report.m}, n={report.n}) "
          f"= {report.value:.12f}{note}")
    print(f"  exponent lambda = {report.exponent}, argmax ({coeffs})")


def main():
    # ----------------------------------------------------------------------
    # Bohnenblust-Hille: max of the ell_{2m/(m+1)} norm over the ball
    # ----------------------------------------------------------------------
    es22 = extreme_points(2, 2)
    show(bh_constant(2, 2, es22))
    es32 = extreme_points(3, 2)
    show(bh_constant(3, 2, es32))
    print()

    # ----------------------------------------------------------------------
    # mixed Littlewood: the ell_1(ell_2) bound, 2^(1/(2m)) times the
    # Bohnenblust-Hille value, attained at the same extreme form
    # ----------------------------------------------------------------------
    show(mixed_littlewood_constant(2, 2, es22))
    print()

    # ----------------------------------------------------------------------
    # Khinchin A_q: piecewise closed form with a branch point q0 where
    # Gamma((q+1)/2) = sqrt(pi)/2; the two branches agree there
    # ----------------------------------------------------------------------
    q0 = khinchin_branch_point()
    print(f"Khinchin branch point q0 = {q0:.10f}")
    for q in (0.5, 1.0, 4 / 3, q0, 1.9, 2.0):
        print(f"  A_{q:<12.10g} = {khinchin_Aq(q):.12f}")
    gap = abs(khinchin_Aq(q0 - 1e-9) - khinchin_Aq(q0 + 1e-9))
    print(f"  branch mismatch at q0: {gap:.3e}")
    print()

    # ----------------------------------------------------------------------
    # two-valued slot collapse constants 2^(1 - 1/m)
    # ----------------------------------------------------------------------
    for m in (1, 2, 3, 4):
        value = two_slot_constant(m)
        assert math.isclose(value, 2 ** (1 - 1 / m), rel_tol=0, abs_tol=0)
        print(f"two_slot_constant({m}) = {value:.12f}")


if __name__ == "__main__":
    main()
