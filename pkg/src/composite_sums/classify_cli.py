"""
Usage:
    composite_sums classify -h | --help
    composite_sums classify grid <feature-table> [--k=<k>] [--q-max=<q-max>] [--projections=<projections>] [--repeats=<repeats>] [--prime] [--cross-validation] [--output=<output> | --out-dir=<out-dir>] [--seed=<seed>] [--threads=<threads>]
    composite_sums classify confusion <feature-table> [--q=<q>] [--projection=<projection>] [--prime] [--output=<output>] [--seed=<seed>]

Options:
    -h --help                       Show this help message.
    grid                            Scores Gaussian Naive Bayes for every projection and every order q from 1 to --q-max, writing one row per q and one column per projection.
    <feature-table>                 The feature table CSV written by the "features" command, holding real and imaginary parts.
    --k=<k>                         The number of training samples drawn from each class for every random split. Defaults to 10.
    --q-max=<q-max>                 The highest order q scored. Defaults to 10.
    --projections=<projections>     Comma separated list of the projections scored. Defaults to abs,re,im,arg.
    --repeats=<repeats>             The number of random splits averaged. Defaults to 10.
    --prime                         If set, uses the diagonal vectors X'_q (orders start at 2).
    --cross-validation              If set, scores on the 3 rounds of the stratified 25:75 cross-validation instead of random k-per-class splits.
    --output=<output>               The CSV file to store the result in. If not set, prints the CSV to the console.
    --out-dir=<out-dir>             The directory to store the accuracy grid (accuracy.csv) in together with the cross-validated confusion matrix of X_(q-max) for every projection (confusion_<projection>.csv).
    --seed=<seed>                   The seed of the splits. Overrides the COMPOSITE_SUMS_SEED environment variable. Defaults to 0.
    --threads=<threads>             The number of processes scoring grid cells in parallel. Overrides the COMPOSITE_SUMS_THREADS environment variable. Defaults to 1.
    confusion                       Sums the confusion matrices of the 25:75 cross-validation rounds for one feature vector; row i, column j counts samples of class i assigned to class j.
    --q=<q>                         The order of the feature vector. Defaults to 3.
    --projection=<projection>       The projection of the feature vector. Defaults to abs.
"""
import sys
import logging as log
from . import classification as cl
from . import features as f
from . import manifest as m
from . import _utils as u

ACCURACY_FILE_NAME = 'accuracy.csv'


def _confusion_csv(dataset: cl.LabeledDataset, seed: int) -> str:
    matrix = cl.cross_validated_confusion(dataset=dataset, seed=seed)
    pair_mass, other_mass = cl.mirror_pair_mass(matrix=matrix)
    log.info(f'Misclassifications between mirror class pairs: {pair_mass}; between other classes: {other_mass}')
    return u.to_csv(
        header=['class'] + dataset.class_names,
        rows=([name] + [int(count) for count in row] for name, row in zip(dataset.class_names, matrix)))


@u.handle_errors
def main() -> None:
    args = u.parse_args(__doc__)
    seed, threads, tolerance = u.get_run_settings(args=args)
    table_path: str = args['<feature-table>']
    table = f.FeatureTable.load(file_path=table_path)
    prime: bool = args['--prime']
    if args['grid']:
        k: int = u.get_option(args=args, option='--k', default=10, value_type=int)
        q_max: int = u.get_option(args=args, option='--q-max', default=10, value_type=int)
        repeats: int = u.get_option(args=args, option='--repeats', default=cl.DEFAULT_REPEATS, value_type=int)
        projections = u.parse_input_sequence(input_source=args['--projections']) if args['--projections'] is not None \
            else list(cl.DEFAULT_PROJECTIONS)
        q_range = range(2 if prime else 1, q_max + 1)
        grid = cl.run_experiment(
            table=table, k=k, q_range=q_range, projections=projections, repeats=repeats, seed=seed, prime=prime, n_workers=threads,
            cross_validation=args['--cross-validation'])
        for projection in projections:
            if len(q_range) > 1:
                log.info(f'Rank correlation of q and accuracy for {projection}: {cl.q_trend(grid=grid, projection=projection):.3f}')
        content = grid.to_csv()
        settings = {'--seed': seed, '--threads': threads}
        out_dir: str | None = args['--out-dir']
        if out_dir is not None:
            u.save_file(file_location=out_dir, file_content=content, file_name=ACCURACY_FILE_NAME)
            for projection in projections:
                dataset = cl.LabeledDataset.from_feature_table(table=table, q=q_max, projection=projection, prime=prime)
                u.save_file(
                    file_location=out_dir, file_content=_confusion_csv(dataset=dataset, seed=seed),
                    file_name=f'confusion_{projection}.csv')
            m.record(
                command='classify', argv=sys.argv[1:], settings=settings, seed=seed, threads=threads, tolerance=tolerance,
                inputs=[table_path], output=out_dir)
            return
    else:
        q: int = u.get_option(args=args, option='--q', default=3, value_type=int)
        projection: str = args['--projection'] if args['--projection'] is not None else 'abs'
        dataset = cl.LabeledDataset.from_feature_table(table=table, q=q, projection=projection, prime=prime)
        content = _confusion_csv(dataset=dataset, seed=seed)
        settings = {'--seed': seed}
    output: str | None = args['--output']
    u.print_or_save(output_target=output, output_content=content)
    if output is not None:
        m.record(
            command='classify', argv=sys.argv[1:], settings=settings, seed=seed, threads=threads, tolerance=tolerance,
            inputs=[table_path], output=output)
