"""
Usage:
    composite_sums scan-pairs -h | --help
    composite_sums scan-pairs <feature-table> [--p-max=<p-max>] [--projection=<projection>] [--output=<output>] [--seed=<seed>]

Options:
    -h --help                   Show this help message.
    <feature-table>             The feature table CSV written by the "features" command, holding the sums e_p_p.
    --p-max=<p-max>             The sums e_p_p for 2 <= p <= p-max are paired. Defaults to 10 (36 pairs).
    --projection=<projection>   The projection of the sums. Defaults to re.
    --output=<output>           The CSV file to store the pairs ranked by their cross-validated accuracy in. If not set, prints the CSV to the console.
    --seed=<seed>               The seed of the cross-validation folds. Overrides the COMPOSITE_SUMS_SEED environment variable. Defaults to 0.
"""
import sys
from . import classification as cl
from . import features as f
from . import manifest as m
from . import _utils as u


@u.handle_errors
def main() -> None:
    args = u.parse_args(__doc__)
    seed, threads, tolerance = u.get_run_settings(args=args)
    table_path: str = args['<feature-table>']
    p_max: int = u.get_option(args=args, option='--p-max', default=10, value_type=int)
    projection: str = args['--projection'] if args['--projection'] is not None else 're'
    table = f.FeatureTable.load(file_path=table_path)
    dataset = cl.LabeledDataset.from_feature_table(table=table, q=p_max, projection=projection, prime=True)
    scores = cl.two_feature_scan(dataset=dataset, seed=seed)
    content = u.to_csv(
        header=['rank', 'first', 'second', 'accuracy'],
        rows=([rank, score.first, score.second, score.accuracy] for rank, score in enumerate(scores, start=1)))
    output: str | None = args['--output']
    u.print_or_save(output_target=output, output_content=content)
    if output is not None:
        m.record(
            command='scan-pairs', argv=sys.argv[1:], settings={'--seed': seed}, seed=seed, threads=threads, tolerance=tolerance,
            inputs=[table_path], output=output)
