"""
Usage:
    composite_sums irregularity -h | --help
    composite_sums irregularity <configurations> [--label=<label>] [--lambda-f=<lambda-f>] [--q-max=<q-max>] [--output=<output>] [--means=<means>] [--tolerance=<tolerance>]

Options:
    -h --help                   Show this help message.
    <configurations>            Comma separated list of configuration files or glob patterns. Or if equal to "-", the files or patterns are read from standard input, one per line.
    --label=<label>             The class label of every configuration. Defaults to the name of the directory holding each file.
    --lambda-f=<lambda-f>       If set, adds the effective conductivity for inclusions of this relative conductivity as a "lambda" column.
    --q-max=<q-max>             The highest order of the conductivity series. Defaults to 6. Ignored if --lambda-f is not set.
    --output=<output>           The CSV file to store one row per configuration in, with the columns sample, label, neg_e_3_3, e_8_8, mu and optionally lambda (real parts of the sums). If not set, prints the CSV to the console.
    --means=<means>             If set, the CSV file to store the mean irregularity of every class in.
    --tolerance=<tolerance>     The tolerance of the Eisenstein series. Overrides the COMPOSITE_SUMS_TOLERANCE environment variable. Defaults to 1e-10.
"""
import collections as co
import sys
import tqdm
from . import conductivity as cd
from . import configuration as c
from . import features as f
from . import irregularity as ir
from . import manifest as m
from . import sums as s
from . import _utils as u


@u.handle_errors
def main() -> None:
    args = u.parse_args(__doc__)
    seed, threads, tolerance = u.get_run_settings(args=args)
    file_paths = u.expand_paths(input_source=args['<configurations>'])
    lambda_f: float | None = u.get_option(args=args, option='--lambda-f', default=None, value_type=float)
    q_max: int = u.get_option(args=args, option='--q-max', default=cd.DEFAULT_Q_MAX, value_type=int)
    label: str | None = args['--label']
    header = ['sample', 'label', 'neg_e_3_3', 'e_8_8', 'mu'] + (['lambda'] if lambda_f is not None else [])
    rows = list[list]()
    values, labels = list[float](), list[str]()
    for file_path in tqdm.tqdm(file_paths):
        config = c.DiskConfiguration.load(file_path=file_path)
        ev = f.get_evaluator(lattice=config.lattice, tolerance=tolerance)
        cache = s.SumCache()
        e33, e88 = ir.irregularity_sums(config=config, ev=ev, cache=cache)
        mu = ir.irregularity(config=config, ev=ev, cache=cache)
        sample_label = label if label is not None else f.default_label(file_path=file_path)
        row = [f.sample_name(file_path=file_path), sample_label, -e33.real, e88.real, mu]
        if lambda_f is not None:
            row.append(cd.effective_conductivity(config=config, lambda_f=lambda_f, ev=ev, q_max=q_max, cache=cache))
        rows.append(row)
        values.append(mu)
        labels.append(sample_label)
    output: str | None = args['--output']
    u.print_or_save(output_target=output, output_content=u.to_csv(header=header, rows=rows))
    means_output: str | None = args['--means']
    if means_output is not None:
        counts = co.Counter(labels)
        means = ir.class_mean_irregularity(values=values, labels=labels)
        u.save_output(
            output_target=means_output,
            output_content=u.to_csv(header=['label', 'mean_mu', 'count'], rows=([name, mean, counts[name]] for name, mean in means.items())))
    if output is not None:
        m.record(
            command='irregularity', argv=sys.argv[1:], settings={'--tolerance': tolerance}, seed=seed, threads=threads,
            tolerance=tolerance, inputs=file_paths, output=output)
