"""
Usage:
    composite_sums conduct -h | --help
    composite_sums conduct <configurations> [--lambda-f=<lambda-f>] [--q-max=<q-max>] [--output=<output>] [--tolerance=<tolerance>]

Options:
    -h --help                   Show this help message.
    <configurations>            Comma separated list of configuration files or glob patterns. Or if equal to "-", the files or patterns are read from standard input, one per line.
    --lambda-f=<lambda-f>       The conductivity of the inclusions relative to the matrix. Defaults to 10.
    --q-max=<q-max>             The highest order of the conductivity series. Defaults to 6.
    --output=<output>           The CSV file to store the series in, one row per configuration and order q with B_q and the conductivity truncated after q. If not set, prints the CSV to the console.
    --tolerance=<tolerance>     The tolerance of the Eisenstein series. Overrides the COMPOSITE_SUMS_TOLERANCE environment variable. Defaults to 1e-10.
"""
import sys
import tqdm
from . import conductivity as co
from . import configuration as c
from . import features as f
from . import manifest as m
from . import _utils as u


@u.handle_errors
def main() -> None:
    args = u.parse_args(__doc__)
    seed, threads, tolerance = u.get_run_settings(args=args)
    file_paths = u.expand_paths(input_source=args['<configurations>'])
    lambda_f: float = u.get_option(args=args, option='--lambda-f', default=10.0, value_type=float)
    q_max: int = u.get_option(args=args, option='--q-max', default=co.DEFAULT_Q_MAX, value_type=int)
    rows = list[list]()
    for file_path in tqdm.tqdm(file_paths):
        config = c.DiskConfiguration.load(file_path=file_path)
        ev = f.get_evaluator(lattice=config.lattice, tolerance=tolerance)
        terms = co.series_partial_sums(config=config, lambda_f=lambda_f, ev=ev, q_max=q_max)
        sample = f.sample_name(file_path=file_path)
        rows.extend([sample, term.q, term.b_q.real, term.b_q.imag, term.partial_sum] for term in terms)
    output: str | None = args['--output']
    u.print_or_save(output_target=output, output_content=u.to_csv(header=['sample', 'q', 'b_q_re', 'b_q_im', 'lambda'], rows=rows))
    if output is not None:
        m.record(
            command='conduct', argv=sys.argv[1:], settings={'--tolerance': tolerance}, seed=seed, threads=threads, tolerance=tolerance,
            inputs=file_paths, output=output)
