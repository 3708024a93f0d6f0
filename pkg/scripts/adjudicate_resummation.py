"""Three-term recurrence checks: random identity batch, the literal set reading, and constant q vs q_i."""

import argparse
from fractions import Fraction

from tangherlini import resummation as rs
from tangherlini.errors import ResonanceError
from tangherlini.params import CaseTag, hypersphere
from tangherlini.radial_ode import indicial_exponents


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--order", type=int, default=12)
    args = ap.parse_args()

    passed, failures = rs.check_identity(args.count, args.order)
    print(f"generating identity: {passed}/{args.count} exact, {len(failures)} counterexamples")

    probe = rs.ThreeTermSpec(Fraction(3, 7), tuple(Fraction(k + 2, k + 3) for k in range(16)))
    report = rs.literal_mismatch_report(probe, 8)
    print(f"literal set reading: {len(report['entries'])} coefficients differ, generating function departs at "
          f"degree {report['first_bad_degree']} ({report['literal_resummed']} vs {report['iterate']})")
    for entry in report["entries"][:4]:
        print(f"  a_{{{entry['i']},{entry['j']}}}: literal {entry['literal']}, corrected {entry['corrected']}")

    print("\nconstant q versus index-dependent q_i (hypersphere, Case 2):")
    print(f"{'n':>2s} {'l':>2s} {'branch':6s} {'q':>6s} {'dev const q':>12s} {'dev q_i':>8s}")
    for n in (3, 4, 5):
        for l in range(3):
            p, m = hypersphere(n, l)
            d = indicial_exponents(p, m)
            for branch, e in (("minus", d.e_minus), ("plus", d.e_plus)):
                try:
                    out = rs.adjudicate_constant_q(p, m, CaseTag.CASE2, e, 16)
                except (ResonanceError, ZeroDivisionError):
                    continue
                print(f"{n:2d} {l:2d} {branch:6s} {str(out['q_constant']):>6s} "
                      f"{out['max_dev_constant_q']:12.3e} {out['max_dev_variable_q']:8.1e}")


if __name__ == "__main__":
    main()
