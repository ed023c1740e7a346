"""
Run Manifests
~~~~~~~~~~~~~
|Functionality| for recording how a command produced its outputs so that the command can be replayed with identical results.
"""
from __future__ import annotations
import datetime as dt
import json
import os
import time
from . import __version__
from . import _utils as u

MANIFEST_FILE_NAME = 'manifest.json'
MANIFEST_SUFFIX = '.manifest.json'


class RunManifest:
    """
    The record of one command run.

    :ivar str command: The subcommand.
    :ivar list[str] argv: The arguments after the program name, with the seed, thread count and tolerance pinned to their resolved values.
    :ivar int seed: The resolved seed.
    :ivar int threads: The resolved number of threads.
    :ivar float tolerance: The resolved tolerance.
    :ivar list[str] inputs: The input files.
    :ivar list[str] outputs: The output files or directories.
    :ivar str working_directory: The directory the command ran in.
    :ivar str version: The package version.
    :ivar str timestamp: The UTC time of the run in ISO format.
    """
    def __init__(
            self, command: str, argv: list[str], seed: int, threads: int, tolerance: float, inputs: list[str], outputs: list[str],
            working_directory: str | None = None, version: str = __version__, timestamp: str | None = None) -> None:
        self.command = command
        self.argv = list(argv)
        self.seed = seed
        self.threads = threads
        self.tolerance = tolerance
        self.inputs = list(inputs)
        self.outputs = list(outputs)
        self.working_directory = working_directory if working_directory is not None else os.getcwd()
        self.version = version
        if timestamp is None:
            timestamp = dt.datetime.fromtimestamp(_testable_time(), tz=dt.timezone.utc).isoformat()
        self.timestamp = timestamp

    _schema = {
        'type': 'object',
        'required': ['command', 'argv', 'seed', 'threads', 'tolerance', 'inputs', 'outputs', 'working_directory', 'version', 'timestamp'],
        'additionalProperties': False,
        'properties': {
            'command': {'type': 'string', 'minLength': 1},
            'argv': {'type': 'array', 'minItems': 1, 'items': {'type': 'string'}},
            'seed': {'type': 'integer', 'minimum': 0},
            'threads': {'type': 'integer', 'minimum': 1},
            'tolerance': {'type': 'number', 'exclusiveMinimum': 0},
            'inputs': {'type': 'array', 'items': {'type': 'string'}},
            'outputs': {'type': 'array', 'items': {'type': 'string'}},
            'working_directory': {'type': 'string'},
            'version': {'type': 'string'},
            'timestamp': {'type': 'string'}
        }
    }

    def to_json_object(self) -> dict:
        return {
            'command': self.command, 'argv': self.argv, 'seed': self.seed, 'threads': self.threads, 'tolerance': self.tolerance,
            'inputs': self.inputs, 'outputs': self.outputs, 'working_directory': self.working_directory, 'version': self.version,
            'timestamp': self.timestamp}

    def save(self, file_path: str) -> None:
        u.save_output(output_target=file_path, output_content=json.dumps(self.to_json_object(), indent=0))

    @staticmethod
    def load(file_path: str) -> RunManifest:
        """ Loads a manifest.

        :param file_path: Path to the manifest JSON file.
        :return: The manifest.
        :raises ValidationError: Raised if the file does not follow the manifest JSON schema.
        """
        json_object = u.load_json_file(
            file_path=file_path, json_schema=RunManifest._schema,
            validation_error_message=f'Failed to load the run manifest. The JSON file at {file_path} does not follow the manifest '
                                     f'JSON schema.')
        return RunManifest(**json_object)


def pin_settings(argv: list[str], settings: dict[str, object]) -> list[str]:
    """ Replaces every occurrence of the given options in ``argv`` with ``--option=value`` using the resolved values, so that
    a replay does not depend on the environment.

    :param argv: The arguments after the program name.
    :param settings: The resolved value of every option, keyed by option name (e.g. "--seed").
    :return: The pinned arguments.
    """
    pinned = list[str]()
    skip_next = False
    for argument in argv:
        if skip_next:
            skip_next = False
            continue
        option = argument.split('=', 1)[0]
        if option in settings:
            skip_next = '=' not in argument
            continue
        pinned.append(argument)
    return pinned + [f'{option}={value}' for option, value in settings.items()]


def manifest_path(output: str) -> str:
    """The manifest of a directory output lives inside it; the manifest of a file output sits next to it."""
    if '.zip:' not in output and (os.path.isdir(output) or output.endswith(os.sep)):
        return os.path.join(output, MANIFEST_FILE_NAME)
    return output + MANIFEST_SUFFIX


def record(
        command: str, argv: list[str], settings: dict[str, object], seed: int, threads: int, tolerance: float, inputs: list[str],
        output: str) -> RunManifest:
    """ Writes the manifest of a finished command next to (or inside) its output.

    :param command: The subcommand.
    :param argv: The arguments after the program name.
    :param settings: The options to pin, keyed by option name.
    :param seed: The resolved seed.
    :param threads: The resolved number of threads.
    :param tolerance: The resolved tolerance.
    :param inputs: The input files.
    :param output: The output file or directory.
    :return: The manifest.
    """
    manifest = RunManifest(
        command=command, argv=pin_settings(argv=argv, settings=settings), seed=seed, threads=threads, tolerance=tolerance,
        inputs=inputs, outputs=[output])
    manifest.save(file_path=manifest_path(output=output))
    return manifest


def _testable_time() -> float:
    """ The time.time() function causes issues when mocked in tests, so we create this wrapper that can be safely mocked

    :return: The result of time.time()
    """
    return time.time()  # pragma: no cover
