"""
Usage:
    composite_sums generate -h | --help
    composite_sums generate <generator-spec> [--count=<count>] [--output=<output>] [--seed=<seed>] [--threads=<threads>]

Options:
    -h --help               Show this help message.
    <generator-spec>        Path to the JSON file describing the generator (protocol, N, concentration, radii and step laws, cycles, shape ID, seed, ...).
    --count=<count>         The number of configurations to generate. Defaults to 1.
    --output=<output>       The directory (or ZIP archive) where the configuration JSON files and the run manifest are stored. Defaults to the current working directory.
    --seed=<seed>           The seed from which the seed of every sample is derived. Overrides the COMPOSITE_SUMS_SEED environment variable and the seed of the generator spec.
    --threads=<threads>     The number of processes generating samples in parallel. Overrides the COMPOSITE_SUMS_THREADS environment variable. Defaults to 1.
"""
import os
import sys
import logging as log
from . import manifest as m
from . import microgen as mg
from . import _utils as u


@u.handle_errors
def main() -> None:
    args = u.parse_args(__doc__)
    spec_path: str = args['<generator-spec>']
    spec = mg.GeneratorSpec.load_from_json(file_path=spec_path)
    seed, threads, tolerance = u.get_run_settings(args=args, default_seed=spec.seed)
    count: int = u.get_option(args=args, option='--count', default=1, value_type=int)
    if count < 1:
        raise u.UsageError(f'--count must be at least 1, got {count}')
    output: str = args['--output'] if args['--output'] is not None else '.'
    seeds = mg.spawn_seeds(seed=seed, count=count)
    configs = mg.generate_many(spec=spec, seeds=seeds, n_workers=threads)
    width = max(4, len(str(count - 1)))
    for i, config in enumerate(configs):
        u.save_file(file_location=output, file_content=str(config), file_name=f'sample_{i:0{width}d}.json')
    log.info(f'Generated {count} configurations with the {spec.protocol} protocol in {output}')
    m.record(
        command='generate', argv=sys.argv[1:], settings={'--seed': seed, '--threads': threads}, seed=seed, threads=threads,
        tolerance=tolerance, inputs=[os.path.abspath(spec_path)], output=output)
