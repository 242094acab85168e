"""Kinetic-on vs kinetic-off order populations as the recoil phase grows.

Prints one row per omega_rec * tau with the largest per-order deviation.
"""

import argparse

from kdquad.core import GratingMode, PulseParams, depth_from_pulse_area
from kdquad.propagator import GridSpec, mass_for_recoil_phase, raman_nath_error

K, TAU = 1e7, 1e-6


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--w", type=float, default=2.0)
    parser.add_argument("--phases", default="0.01,0.03,0.1,0.3,1,3,10")
    parser.add_argument("--points", type=int, default=1024)
    parser.add_argument("--periods", type=int, default=8)
    args = parser.parse_args()

    mode = GratingMode.quadrupole(K, depth_from_pulse_area(args.w, TAU))
    print("recoil_phase,max_deviation,P0_analytic,steps")
    for phase in (float(p) for p in args.phases.split(",")):
        rep = raman_nath_error(
            mode, PulseParams(TAU), GridSpec(args.points, args.periods), mass_for_recoil_phase(K, TAU, phase)
        )
        print(f"{phase:g},{rep.max_deviation:.6e},{rep.analytic[0]:.6f},{rep.steps}")


if __name__ == "__main__":
    main()
