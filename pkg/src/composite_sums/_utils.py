import logging as log
import typing as t
import zipfile as zf
import functools as ft
import glob
import csv
import io
import os
import sys
import json
import docopt as d
import jsonschema as js

SEED_ENV = 'COMPOSITE_SUMS_SEED'
THREADS_ENV = 'COMPOSITE_SUMS_THREADS'
TOLERANCE_ENV = 'COMPOSITE_SUMS_TOLERANCE'
DEFAULT_SEED = 0
DEFAULT_THREADS = 1
DEFAULT_TOLERANCE = 1e-10


class UsageError(Exception):
    """Raised for command line mistakes that are not caught by docopt (missing files, empty globs)."""


def load_json_file(file_path: str, json_schema: dict, validation_error_message: str) -> dict:
    if '.zip:' in file_path:
        [file_location, file_name] = file_path.split('.zip:')
        file_location = file_location + '.zip'
        with zf.ZipFile(file_location, 'r') as zip_file:
            json_object: bytes = zip_file.read(file_name)
            json_object: dict = json.loads(s=json_object)
    else:
        with open(file_path, 'r') as file:
            json_object: dict = json.load(file)
    validate_json_object(json_object=json_object, json_schema=json_schema, validation_error_message=validation_error_message)
    return json_object


def validate_json_object(json_object: dict, json_schema: dict, validation_error_message: str) -> None:
    try:
        js.validate(json_object, json_schema)
    except js.exceptions.ValidationError as e:
        log.error(validation_error_message)
        raise e


def parse_input_sequence(input_source: str) -> list[str]:
    if input_source == '-':
        # Read from standard input
        inputs: str = sys.stdin.read()
        inputs: list = inputs.strip().split('\n')
    else:
        # Split a comma separated list
        inputs: list = input_source.split(',')
    inputs: list = [input_string.strip() for input_string in inputs if input_string.strip() != '']
    if not inputs:
        input_source = 'standard input' if input_source == '-' else f'comma separated list: "{input_source}"'
        raise UsageError(f'Empty list provided from {input_source}')
    return inputs


def expand_paths(input_source: str) -> list[str]:
    """ Expands a comma separated list of glob patterns (or "-" for patterns on standard input) into the matching file paths.

    :param input_source: The patterns to expand.
    :return: The matching paths, each pattern's matches sorted, duplicates removed.
    :raises UsageError: Raised if nothing matches.
    """
    paths = list[str]()
    for pattern in parse_input_sequence(input_source=input_source):
        matches = sorted(glob.glob(pattern)) if glob.has_magic(pattern) else [pattern]
        for match in matches:
            if not os.path.isfile(match):
                raise UsageError(f'Input file not found: {match}')
            if match not in paths:
                paths.append(match)
    if not paths:
        raise UsageError(f'No input files match "{input_source}"')
    return paths


def print_or_save(output_target: str | None, output_content: str) -> None:
    if output_target is None:
        print(output_content)
    else:
        save_output(output_target=output_target, output_content=output_content)


def save_output(output_target: str, output_content: str | bytes) -> None:
    if '.zip:' in output_target:
        [file_location, file_name] = output_target.split('.zip:')
        file_location: str = file_location + '.zip'
    else:
        file_location, file_name = os.path.split(output_target)
        file_location = '.' if file_location == '' else file_location
    save_file(file_location=file_location, file_content=output_content, file_name=file_name)


def save_file(file_location: str, file_content: str | bytes, file_name: str) -> None:
    if file_location.endswith('.zip'):
        with zf.ZipFile(file_location, 'a') as zip_file:
            zip_file.writestr(file_name, file_content)
    else:
        if not os.path.isdir(file_location):
            os.makedirs(file_location)
        file_path = os.path.join(file_location, file_name)
        save_type = 'wb' if type(file_content) is bytes else 'w'
        encoding: str | None = None if type(file_content) is bytes else 'utf-8'
        # newline='' keeps the csv module's line endings untouched
        newline: str | None = None if type(file_content) is bytes else ''
        with open(file_path, save_type, encoding=encoding, newline=newline) as file:
            file.write(file_content)


def to_csv(header: list[str], rows: t.Iterable[t.Sequence]) -> str:
    """ Renders rows as CSV text. Floats are written with ``repr`` so that they round trip exactly.

    :param header: The column names.
    :param rows: The rows of values.
    :return: The CSV text.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(value) if type(value) is float else value for value in row])
    return buffer.getvalue()


def read_csv(file_path: str) -> tuple[list[str], list[list[str]]]:
    with open(file_path, 'r', encoding='utf-8', newline='') as file:
        reader = csv.reader(file)
        try:
            header: list[str] = next(reader)
        except StopIteration:
            raise ValueError(f'The CSV file at {file_path} is empty')
        rows = [row for row in reader if row]
    return header, rows


def parse_args(doc: str) -> dict:
    """ Parses the command line with docopt, exiting with status 2 on a usage error.

    :param doc: The docopt usage string.
    :return: The parsed arguments.
    """
    try:
        return d.docopt(doc)
    except d.DocoptExit as e:
        print(str(e), file=sys.stderr)
        sys.exit(2)


def get_option(args: dict, option: str, default: t.Any, value_type: type) -> t.Any:
    """Converts the value of a command line option, using the default when the option is not set."""
    raw_value: str | None = args.get(option)
    if raw_value is None:
        return default
    try:
        return value_type(raw_value)
    except ValueError:
        raise UsageError(f'Invalid value for {option}: "{raw_value}"')


def get_setting(args: dict, option: str, env_var: str, default: t.Any, value_type: type) -> t.Any:
    """ Resolves a global setting. A command line flag takes precedence over the environment variable which takes precedence over the default.

    :param args: The parsed docopt arguments.
    :param option: The option name (e.g. "--seed").
    :param env_var: The environment variable that overrides the default.
    :param default: The value used when neither the flag nor the environment variable is set.
    :param value_type: The type to convert the raw value to.
    :return: The resolved value.
    """
    if args.get(option) is not None:
        return get_option(args=args, option=option, default=default, value_type=value_type)
    raw_value = os.environ.get(env_var)
    if raw_value is None:
        return default
    try:
        return value_type(raw_value)
    except ValueError:
        raise UsageError(f'Invalid value for {env_var}: "{raw_value}"')


def get_run_settings(args: dict, default_seed: int = DEFAULT_SEED) -> tuple[int, int, float]:
    """The seed, thread count and tolerance of a command, each from its flag, its environment variable or its default."""
    seed: int = get_setting(args=args, option='--seed', env_var=SEED_ENV, default=default_seed, value_type=int)
    threads: int = get_setting(args=args, option='--threads', env_var=THREADS_ENV, default=DEFAULT_THREADS, value_type=int)
    tolerance: float = get_setting(
        args=args, option='--tolerance', env_var=TOLERANCE_ENV, default=DEFAULT_TOLERANCE, value_type=float)
    if threads < 1:
        raise UsageError(f'The number of threads must be at least 1, got {threads}')
    if seed < 0 or not tolerance > 0:
        raise UsageError(f'The seed must be non-negative and the tolerance positive, got {seed} and {tolerance}')
    return seed, threads, tolerance


def handle_errors(main: t.Callable[[], None]) -> t.Callable[[], None]:
    """ Wraps a command's ``main`` so that usage problems exit with status 2 and numeric or protocol errors exit with status 3."""
    @ft.wraps(main)
    def wrapper() -> None:
        try:
            main()
        except (UsageError, FileNotFoundError, IsADirectoryError) as e:
            log.error(str(e))
            sys.exit(2)
        except js.exceptions.ValidationError:
            # Already logged by validate_json_object
            sys.exit(3)
        except (ValueError, RuntimeError, ArithmeticError) as e:
            log.error(str(e))
            sys.exit(3)
    return wrapper
