"""
Usage:
    composite_sums replay -h | --help
    composite_sums replay <manifest>

Options:
    -h --help       Show this help message.
    <manifest>      The manifest JSON file written next to (or inside) the output of a command. The command is rerun in its original working directory with its recorded arguments, overwriting its outputs.
"""
import logging as log
import os
import sys
from . import __version__
from . import manifest as m
from . import _utils as u


@u.handle_errors
def main() -> None:
    args = u.parse_args(__doc__)
    manifest_path: str = os.path.abspath(args['<manifest>'])
    manifest = m.RunManifest.load(file_path=manifest_path)
    if manifest.command == 'replay':
        raise u.UsageError('A replay cannot be replayed')
    if manifest.version != __version__:
        log.warning(f'The manifest was written by version {manifest.version} but this is version {__version__}')
    if not os.path.isdir(manifest.working_directory):
        raise u.UsageError(f'The working directory of the recorded run does not exist: {manifest.working_directory}')
    from . import __main__ as main_module
    os.chdir(manifest.working_directory)
    sys.argv = [sys.argv[0]] + manifest.argv
    main_module.main()
