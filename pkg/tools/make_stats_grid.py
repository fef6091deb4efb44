#!/usr/bin/env python3
"""Generate the pinned special-function reference grid.

Reference values come from scipy (used only here, at fixture-build
time) and are frozen into tests/data/special_grid.csv; the test suite
then checks the package's own series/continued-fraction implementations
against the frozen numbers to 1e-10 absolute.

Usage: python3 tools/make_stats_grid.py > tests/data/special_grid.csv
"""

import sys

from scipy.special import betainc as sp_betainc
from scipy.special import erfc as sp_erfc
from scipy.stats import norm, t as student


def main():
    out = sys.stdout
    out.write("function,arg1,arg2,arg3,value\n")
    for x in [-6.0, -3.5, -2.0, -1.0, -0.5, -0.1, 0.0, 0.1, 0.5, 1.0, 1.5, 2.0, 3.0, 4.5, 6.0, 8.0]:
        out.write(f"erfc,{x},,,{sp_erfc(x):.16e}\n")
    for z in [-8.0, -4.0, -2.5, -1.0, -0.25, 0.0, 0.25, 1.0, 1.959963984540054, 2.5, 4.0, 6.0]:
        out.write(f"normal_sf,{z},,,{norm.sf(z):.16e}\n")
    for a, b, x in [
        (0.5, 0.5, 0.25), (0.5, 0.5, 0.75), (1.0, 3.0, 0.4), (2.5, 1.5, 0.6),
        (5.0, 0.5, 0.9), (0.5, 5.0, 0.1), (10.0, 10.0, 0.5), (3.0, 7.0, 0.2),
        (100.0, 0.5, 0.995), (0.5, 100.0, 0.001),
    ]:
        out.write(f"betainc,{a},{b},{x},{sp_betainc(a, b, x):.16e}\n")
    for tval, dof in [
        (0.0, 1.0), (0.5, 1.0), (0.57735026918962576, 1.0), (1.0, 2.0), (4.242640687119285, 2.0),
        (2.0, 5.0), (-2.0, 5.0), (1.5, 10.0), (3.0, 30.0), (2.5, 200.0), (-4.0, 200.0), (0.1, 7.0),
    ]:
        out.write(f"student_sf,{tval},{dof},,{student.sf(tval, dof):.16e}\n")


if __name__ == "__main__":
    main()
