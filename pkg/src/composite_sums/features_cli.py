"""
Usage:
    composite_sums features -h | --help
    composite_sums features <configurations> --q=<q> [--projection=<projection>] [--prime] [--label=<label>] [--output=<output>] [--threads=<threads>] [--tolerance=<tolerance>]

Options:
    -h --help                       Show this help message.
    <configurations>                Comma separated list of configuration files or glob patterns (e.g. "rsa/*.json,mc/*.json"). Or if equal to "-", the files or patterns are read from standard input, one per line. Files ending in ".csv" are read as x,y,r disks on the unit square.
    --q=<q>                         The order q of the feature vector X_q, between 1 and 12.
    --projection=<projection>       How complex sums are stored: "re_im" (real and imaginary parts, from which every projection can be derived later), "abs", "re", "im" or "arg". Defaults to re_im.
    --prime                         If set, builds the diagonal vector X'_q of the sums e_p_p for 2 <= p <= q instead of X_q.
    --label=<label>                 The class label of every configuration. Defaults to the name of the directory holding each file.
    --output=<output>               The CSV file to store the feature table in. If not set, prints the CSV to the console.
    --threads=<threads>             The number of processes computing features in parallel. Overrides the COMPOSITE_SUMS_THREADS environment variable. Defaults to 1.
    --tolerance=<tolerance>         The tolerance of the Eisenstein series. Overrides the COMPOSITE_SUMS_TOLERANCE environment variable. Defaults to 1e-10.
"""
import sys
from . import features as f
from . import manifest as m
from . import _utils as u


@u.handle_errors
def main() -> None:
    args = u.parse_args(__doc__)
    seed, threads, tolerance = u.get_run_settings(args=args)
    file_paths = u.expand_paths(input_source=args['<configurations>'])
    q: int = u.get_option(args=args, option='--q', default=None, value_type=int)
    min_q = 2 if args['--prime'] else 1
    if not min_q <= q <= f.MAX_Q:
        raise u.UsageError(f'--q must be between {min_q} and {f.MAX_Q}, got {q}')
    projection: str = args['--projection'] if args['--projection'] is not None else 're_im'
    if projection not in f.PROJECTIONS or projection == 'complex':
        raise u.UsageError(f'Invalid projection "{projection}". Valid values are: re_im, abs, re, im, arg')
    label: str | None = args['--label']
    labels = [label] * len(file_paths) if label is not None else None
    table = f.build_feature_table(
        file_paths=file_paths, q=q, projection=projection, prime=args['--prime'], labels=labels, tolerance=tolerance,
        n_workers=threads)
    output: str | None = args['--output']
    u.print_or_save(output_target=output, output_content=table.to_csv())
    if output is not None:
        m.record(
            command='features', argv=sys.argv[1:], settings={'--threads': threads, '--tolerance': tolerance}, seed=seed,
            threads=threads, tolerance=tolerance, inputs=file_paths, output=output)
