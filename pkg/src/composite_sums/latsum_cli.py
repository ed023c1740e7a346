"""
Usage:
    composite_sums latsum -h | --help
    composite_sums latsum [--lattice=<lattice>] [--n-max=<n-max>] [--output=<output>]

Options:
    -h --help               Show this help message.
    --lattice=<lattice>     The lattice of the periodic cell: "square", "hexagonal" or the periods as "x1,y1,x2,y2". Defaults to square.
    --n-max=<n-max>         The highest order n of the lattice sums S_2 through S_n-max. Defaults to 12.
    --output=<output>       The CSV file to store the lattice sums in (columns n, re, im). If not set, prints the CSV to the console. If a ZIP archive, the file path must be in the form of /path/to/zip-archive.zip:/path/to/file (e.g. ./archive.zip:sums.csv).
"""
import sys
from . import lattice as la
from . import manifest as m
from . import _utils as u


@u.handle_errors
def main() -> None:
    args = u.parse_args(__doc__)
    lattice_string: str = args['--lattice'] if args['--lattice'] is not None else 'square'
    n_max: int = u.get_option(args=args, option='--n-max', default=12, value_type=int)
    if n_max < 2:
        raise u.UsageError(f'--n-max must be at least 2, got {n_max}')
    lattice = la.Lattice.from_string(lattice_string=lattice_string)
    rows = list[list]()
    for n in range(2, n_max + 1):
        value = la.lattice_sum_S2(lattice=lattice) if n == 2 else la.lattice_sum_Sn(lattice=lattice, n=n)
        rows.append([n, float(value.real), float(value.imag)])
    output: str | None = args['--output']
    u.print_or_save(output_target=output, output_content=u.to_csv(header=['n', 're', 'im'], rows=rows))
    if output is not None:
        seed, threads, tolerance = u.get_run_settings(args=args)
        m.record(
            command='latsum', argv=sys.argv[1:], settings={}, seed=seed, threads=threads, tolerance=tolerance, inputs=[],
            output=output)
