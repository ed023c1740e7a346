"""
Usage:
    composite_sums fit-curve -h | --help
    composite_sums fit-curve <points> [--x=<x-column>] [--y=<y-column>] [--output=<output>]

Options:
    -h --help               Show this help message.
    <points>                A CSV file with a header row holding the x and y values to fit y = a log(b x + 1) to.
    --x=<x-column>          The column of the x values. Defaults to x.
    --y=<y-column>          The column of the y values. Defaults to y.
    --output=<output>       The CSV file to store a, b and the residual in. If not set, prints the CSV to the console.
"""
import sys
from . import irregularity as ir
from . import manifest as m
from . import _utils as u


@u.handle_errors
def main() -> None:
    args = u.parse_args(__doc__)
    seed, threads, tolerance = u.get_run_settings(args=args)
    points_path: str = args['<points>']
    x_column: str = args['--x'] if args['--x'] is not None else 'x'
    y_column: str = args['--y'] if args['--y'] is not None else 'y'
    header, rows = u.read_csv(file_path=points_path)
    for column in (x_column, y_column):
        if column not in header:
            raise u.UsageError(f'The CSV file at {points_path} has no column "{column}"')
    x_index, y_index = header.index(x_column), header.index(y_column)
    points = [(float(row[x_index]), float(row[y_index])) for row in rows]
    a, b = ir.fit_log_curve(points=points)
    residual = ir.log_curve_residual(points=points, a=a, b=b)
    output: str | None = args['--output']
    u.print_or_save(output_target=output, output_content=u.to_csv(header=['a', 'b', 'residual'], rows=[[a, b, residual]]))
    if output is not None:
        m.record(
            command='fit-curve', argv=sys.argv[1:], settings={}, seed=seed, threads=threads, tolerance=tolerance,
            inputs=[points_path], output=output)
