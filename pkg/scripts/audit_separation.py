"""Which strided series actually solve the radial equation?

For each parameter set, build the strided series from the separated
recurrence, list master-relation terms the recurrence drops, and compare
with the numerical integrator.
"""

import argparse

from tangherlini import frobenius as fr
from tangherlini import oracle
from tangherlini.errors import ResonanceError
from tangherlini.params import ModeParams, SpacetimeParams, classify_case, hypersphere
from tangherlini.radial_ode import indicial_exponents

SWEEP = [
    ("hypersphere n=4 l=2", *hypersphere(4, 2, exact=False)),
    ("hypersphere n=6 l=1", *hypersphere(6, 1, exact=False)),
    ("case2 n=5 mu=7/3", SpacetimeParams(5, 1.0, 0.0, 12.0), ModeParams(0.0, 7 / 3, 0.0)),
    ("case2 n=6 mu=1.7 rho=0.8", SpacetimeParams(6, 0.8, 0.0, 20.0), ModeParams(0.0, 1.7, 0.0)),
    ("case2 n=5 nu=3", SpacetimeParams(5, 1.0, 0.0, 12.0), ModeParams(3.0, 2.0, 3.0)),
    ("case2 n=4 nu=1", SpacetimeParams(4, 1.0, 0.0, 6.0), ModeParams(1.0, 2.0, 1.0)),
    ("case1 n=4 pure lambda", SpacetimeParams(4, 1.0, 20.0, 0.0), ModeParams(1.0, 0.0, 0.0)),
    ("case1 n=5 pure lambda", SpacetimeParams(5, 1.0, 30.0, 0.0), ModeParams(2.0, 0.0, 0.0)),
    ("case1 n=4 mu=1 R_h=6", SpacetimeParams(4, 1.0, 20.0, 6.0), ModeParams(1.0, 1.0, 0.0)),
    ("case1 n=5 mu=2 R_h=12", SpacetimeParams(5, 1.0, 30.0, 12.0), ModeParams(2.0, 2.0, 0.0)),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--N", type=int, default=64)
    args = ap.parse_args()
    print(f"{'label':28s} {'case':6s} {'branch':6s} {'dropped terms':28s} {'oracle dev':>10s}")
    for label, p, m in SWEEP:
        case = classify_case(p, m)
        d = indicial_exponents(p, m, case)
        for branch, e in (("minus", d.e_minus), ("plus", d.e_plus)):
            try:
                s = fr.build_series(p, m, case, e, args.N)
            except ResonanceError:
                print(f"{label:28s} {str(case):6s} {branch:6s} {'(logarithmic: resonance)':28s}")
                continue
            report = fr.audit_series(s)
            names = sorted({name for _, name, _ in report.offending}) or ["-"]
            try:
                dev = f"{oracle.compare_to_series(s, (0.1, 0.5), 0.3).deviation:10.2e}"
            except Exception as exc:  # divergent or singular: report and move on
                dev = type(exc).__name__
            print(f"{label:28s} {str(case):6s} {branch:6s} {','.join(names):28s} {dev:>10s}")


if __name__ == "__main__":
    main()
