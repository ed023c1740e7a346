"""
Usage:
    composite_sums -h | --help           Show this help message.
    composite_sums -v | --version        Displays the package version.
    composite_sums --full-help           Show the help message of all sub commands.
    composite_sums latsum ...            Computes the lattice sums S_n of a periodic cell.
    composite_sums generate ...          Generates random or regular disk configurations from a generator spec.
    composite_sums features ...          Computes the structural-sums feature vectors of disk configurations as a feature table.
    composite_sums classify ...          Scores Naive Bayes classification of a feature table over feature orders and projections.
    composite_sums conduct ...           Evaluates the effective-conductivity series of disk configurations.
    composite_sums irregularity ...      Computes the irregularity measure of disk configurations.
    composite_sums scan-pairs ...        Ranks every pair of diagonal structural sums by classification accuracy.
    composite_sums fit-curve ...         Fits a logarithmic curve through the origin to (x, y) points.
    composite_sums replay ...            Reruns a command from its run manifest.
"""
import sys
from . import __version__
from . import latsum_cli as ls_cli
from . import generate_cli as g_cli
from . import features_cli as f_cli
from . import classify_cli as cl_cli
from . import conduct_cli as co_cli
from . import irregularity_cli as ir_cli
from . import scan_pairs_cli as sp_cli
from . import fit_curve_cli as fc_cli
from . import replay_cli as r_cli

_commands = {
    'latsum': ls_cli, 'generate': g_cli, 'features': f_cli, 'classify': cl_cli, 'conduct': co_cli, 'irregularity': ir_cli,
    'scan-pairs': sp_cli, 'fit-curve': fc_cli, 'replay': r_cli}


def main() -> None:
    first_arg: str = sys.argv[1] if len(sys.argv) > 1 else None
    if first_arg in _commands:
        _commands[first_arg].main()
    elif first_arg == '--full-help':
        separator = '-'*80
        print(__doc__)
        for command_module in _commands.values():
            print(separator)
            print(command_module.__doc__)
    elif first_arg == '--version' or first_arg == '-v':
        print(__version__)
    else:
        print(__doc__)


if __name__ == '__main__':  # pragma: no cover
    main()  # pragma: no cover
