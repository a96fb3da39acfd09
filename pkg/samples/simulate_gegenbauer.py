"""
Simulate Gegenbauer

Build the best basis of a one factor Gegenbauer process, simulate a few
series with it and compare their averaged sample autocorrelations with the
exact ones.
"""

import os
from fractions import Fraction

import numpy as np

from bacpypes.debugging import bacpypes_debugging, ModuleLogger
from bacpypes.consolelogging import ArgumentParser

from gegenpypes.filters import make_filter, parse_filter_name
from gegenpypes.gegenbauer import GegenbauerModel, autocovariance
from gegenpypes.bestbasis import best_basis_1factor, render_partition
from gegenpypes.simulate import SimConfig, simulate_wp
from gegenpypes.analysis import averaged_correlation

# some debugging
_debug = 0
_log = ModuleLogger(globals())

# settings
SEED = int(os.getenv("GEGENPYPES_SEED", 0))
REPLICATES = int(os.getenv("SAMPLE_REPLICATES", 100))

#
#   SampleRun
#


@bacpypes_debugging
class SampleRun:

    """
    Sample Run
    """

    def __init__(self, d, nu, J, filter_name):
        if _debug:
            SampleRun._debug("__init__ %r %r %r %r", d, nu, J, filter_name)

        self.model = GegenbauerModel([(d, nu)])
        self.tree = best_basis_1factor(nu, J)
        self.qmf = make_filter(*parse_filter_name(filter_name))

    def run(self, replicates, seed):
        if _debug:
            SampleRun._debug("run %r %r", replicates, seed)

        print(render_partition(self.tree))
        print("leaves: %d" % (self.tree.leaf_count(),))

        config = SimConfig(
            self.model, self.tree, self.qmf, seed=seed, replicates=replicates
        )
        series = simulate_wp(config)
        if _debug:
            SampleRun._debug("    - series: %r", series.shape)

        rho_bar = averaged_correlation(series)
        rho = autocovariance(self.model, len(rho_bar) - 1).rho

        print("  lag    exact  simulated")
        for h in range(0, 25, 3):
            print("  %3d  %7.4f  %9.4f" % (h, rho[h], rho_bar[h]))
        print("max abs difference: %.4f" % (np.max(np.abs(rho - rho_bar)),))


#
#   main
#


def main():
    # parse the command line arguments
    parser = ArgumentParser(description=__doc__)

    # process parameters
    parser.add_argument(
        "--d", type=float, help="memory parameter", default=0.4,
    )
    parser.add_argument(
        "--nu", type=Fraction, help="Gegenbauer frequency", default=Fraction(1, 12),
    )
    parser.add_argument(
        "--J", type=int, help="depth, the series length is 2^J", default=8,
    )
    parser.add_argument(
        "--filter", help="filter short name", default="db10",
    )
    parser.add_argument(
        "--replicates", type=int, help="number of series", default=REPLICATES,
    )

    # now parse the arguments
    args = parser.parse_args()

    if _debug:
        _log.debug("initialization")
    if _debug:
        _log.debug("    - args: %r", args)

    sample_run = SampleRun(args.d, args.nu, args.J, args.filter)
    if _debug:
        _log.debug("    - sample_run: %r", sample_run)

    _log.debug("running")

    sample_run.run(args.replicates, SEED)

    _log.debug("fini")


if __name__ == "__main__":
    main()
