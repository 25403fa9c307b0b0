"""Certify extremality exactly, and watch non-extreme points fail.

A coefficient vector a with sup norm exactly 1 is an extreme point of the
unit ball iff its tight tensor vertices (those with |<a, w(x)>| = 1) span
the full coefficient space R^(n^m). Both sides of the test are decided in
exact rational arithmetic, so a certificate is a proof, not a numerical
judgement. This script certifies the bilinear 2x2 set, then constructs
points that fail each clause of the test and prints the witnesses.

Run:  python3 demos/02_certificates.py
"""

from fractions import Fraction

from extremeforms.core import FormVector
from extremeforms.search import extreme_points, in_unit_ball, is_extreme

F = Fraction


def main():
    es = extreme_points(2, 2)
    print(f"extreme_points(2, 2): {len(es)} points")

    # ----------------------------------------------------------------------
    # every emitted point certifies: norm exactly 1, tight rank 4 of 4
    # ----------------------------------------------------------------------
    for point in es.points:
        certificate = is_extreme(point)
        assert certificate and certificate.tight_rank == 4
    example = es.points[-1]
    certificate = is_extreme(example)
    print(f"certified {tuple(str(c) for c in example.coeffs)}: "
          f"norm {certificate.norm_value}, "
          f"tight rank {certificate.tight_rank} of "
          f"{certificate.dimension}, "
          f"{certificate.tight_count} tight vertices")
    print()

    # ----------------------------------------------------------------------
    # a midpoint of two distinct extreme points is never extreme; the
    # certificate returns a midpoint witness splitting it inside the ball.
    # The midpoint of the coordinate form and the half-coefficient form
    # still has sup norm 1, so only the rank clause can reject it.
    # ----------------------------------------------------------------------
    a = FormVector((F(1), F(0), F(0), F(0)), 2, 2)
    b = FormVector((F(1, 2), F(1, 2), F(1, 2), F(-1, 2)), 2, 2)
    assert a in es.points and b in es.points
    mid = FormVector(tuple((x + y) / 2 for x, y in zip(a.coeffs, b.coeffs)),
                     2, 2)
    certificate = is_extreme(mid)
    assert not certificate
    print(f"midpoint {tuple(str(c) for c in mid.coeffs)}:")
    print(f"  extreme: {bool(certificate)}")
    print(f"  tight rank {certificate.tight_rank} of "
          f"{certificate.dimension}")
    offset = certificate.midpoint_offset.coeffs
    print(f"  offset d with a +- d both in the ball: "
          f"{tuple(str(c) for c in offset)}")
    for sign in (1, -1):
        shifted = tuple(x + sign * d for x, d in zip(mid.coeffs, offset))
        assert in_unit_ball(FormVector(shifted, 2, 2))
    print("  checked: both a + d and a - d stay inside the unit ball")
    print()

    # ----------------------------------------------------------------------
    # points outside the ball fail with an explicit violating vertex tuple
    # ----------------------------------------------------------------------
    outside = FormVector((F(1), F(1), F(0), F(0)), 2, 2)
    report = in_unit_ball(outside)
    assert not report
    print(f"point {tuple(str(c) for c in outside.coeffs)}:")
    print(f"  inside: {bool(report)}, norm reaches {report.value}")
    print(f"  witness sign vectors: {report.witness}")


if __name__ == "__main__":
    main()
