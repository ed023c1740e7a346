"""
Disk Configurations
~~~~~~~~~~~~~~~~~~~
|Functionality| for describing a composite as non-overlapping disks in the doubly periodic cell, validating it, and loading and
saving it as JSON or CSV.
"""
from __future__ import annotations
import itertools as it
import json
import math
import numpy as np
from . import lattice as la
from . import _utils as u

_tokens = it.count()


class ConfigurationError(ValueError):
    """Raised for disk configurations that violate the geometric invariants or do not match the lattice they are evaluated on."""


class DiskConfiguration:
    """
    Disks with centers ``centers`` and radii ``radii`` in the fundamental cell of ``lattice``. Instances are immutable; every
    instance carries a unique ``token`` that keys cached intermediate results.

    :ivar Lattice lattice: The lattice of the periodic cell.
    :ivar numpy.ndarray centers: Complex centers a_k, reduced into the fundamental cell.
    :ivar numpy.ndarray radii: Positive radii r_j.
    :ivar dict metadata: Free-form information about how the configuration was made.
    """
    def __init__(
            self, lattice: la.Lattice, centers: np.ndarray | list[complex], radii: np.ndarray | list[float],
            metadata: dict | None = None, slack: float = 1e-12, validate: bool = True) -> None:
        """
        :param lattice: The lattice of the periodic cell.
        :param centers: The complex disk centers.
        :param radii: The disk radii.
        :param metadata: Optional information about the origin of the configuration.
        :param slack: The tolerance of the non-overlap and in-cell checks.
        :param validate: Whether to check the invariants. Generators that already guarantee them may skip the check.
        :raises ConfigurationError: Raised if the configuration is empty, has non-positive radii, has centers outside the cell or overlapping disks.
        """
        centers = np.array(centers, dtype=complex).ravel()
        radii = np.array(radii, dtype=float).ravel()
        if centers.size == 0:
            raise ConfigurationError('A disk configuration needs at least one disk')
        if centers.size != radii.size:
            raise ConfigurationError(f'Got {centers.size} centers but {radii.size} radii')
        centers.setflags(write=False)
        radii.setflags(write=False)
        self._lattice = lattice
        self._centers = centers
        self._radii = radii
        self._slack = slack
        self.metadata: dict = dict(metadata) if metadata is not None else {}
        self._token = next(_tokens)
        if validate:
            self.validate()

    def validate(self) -> None:
        """ Checks the radii, the in-cell position of every center and the non-overlap of every pair under the periodic metric.

        :raises ConfigurationError: Raised on the first violated invariant.
        """
        if not np.all(np.isfinite(self._radii)) or np.any(self._radii <= 0):
            raise ConfigurationError('All radii must be positive and finite')
        if not np.all(np.isfinite(self._centers)):
            raise ConfigurationError('All centers must be finite')
        outside = np.flatnonzero(~self._lattice.contains(z=self._centers, slack=self._slack))
        if outside.size:
            raise ConfigurationError(f'The center of disk {outside[0]} ({self._centers[outside[0]]}) lies outside the fundamental cell')
        overlap = find_overlap(
            lattice=self._lattice, centers=self._centers, radii=self._radii, slack=self._slack)
        if overlap is not None:
            j, k, distance = overlap
            raise ConfigurationError(
                f'Disks {j} and {k} overlap: their periodic distance {distance} is less than the sum of their radii '
                f'{self._radii[j] + self._radii[k]}')

    def __setstate__(self, state: dict) -> None:
        self.__dict__.update(state)
        self._token = next(_tokens)

    @property
    def lattice(self) -> la.Lattice:
        return self._lattice

    @property
    def centers(self) -> np.ndarray:
        return self._centers

    @property
    def radii(self) -> np.ndarray:
        return self._radii

    @property
    def token(self) -> int:
        return self._token

    @property
    def n_disks(self) -> int:
        return self._centers.size

    @property
    def r(self) -> float:
        """The largest radius."""
        return float(self._radii.max())

    @property
    def nu_j(self) -> np.ndarray:
        """The polydispersity factors (r_j / r)^2."""
        return (self._radii / self.r) ** 2

    @property
    def eta(self) -> float:
        return math.fsum(self.nu_j)

    @property
    def concentration(self) -> float:
        """The area fraction pi sum r_j^2 / |Q| (the cell area is 1 for the presets)."""
        return math.pi * math.fsum(self._radii ** 2) / self._lattice.area

    def translated(self, shift: complex) -> DiskConfiguration:
        """A copy with every center moved by ``shift`` and reduced back into the cell."""
        return DiskConfiguration(
            lattice=self._lattice, centers=self._lattice.reduce(z=self._centers + shift), radii=self._radii,
            metadata=self.metadata, slack=self._slack, validate=False)

    def permuted(self, order: np.ndarray | list[int]) -> DiskConfiguration:
        """A copy with the disks relabeled by ``order``."""
        order = np.asarray(order)
        return DiskConfiguration(
            lattice=self._lattice, centers=self._centers[order], radii=self._radii[order], metadata=self.metadata,
            slack=self._slack, validate=False)

    _schema = {
        'type': 'object',
        'required': ['lattice', 'disks'],
        'additionalProperties': False,
        'properties': {
            'lattice': {
                'oneOf': [
                    {'type': 'string', 'enum': list(la.Lattice.PRESETS)},
                    {
                        'type': 'object',
                        'required': ['omega1', 'omega2'],
                        'additionalProperties': False,
                        'properties': {
                            'omega1': {'type': 'array', 'minItems': 2, 'maxItems': 2, 'items': {'type': 'number'}},
                            'omega2': {'type': 'array', 'minItems': 2, 'maxItems': 2, 'items': {'type': 'number'}}
                        }
                    }
                ]
            },
            'disks': {
                'type': 'array',
                'minItems': 1,
                'items': {
                    'type': 'object',
                    'required': ['x', 'y', 'r'],
                    'additionalProperties': False,
                    'properties': {
                        'x': {'type': 'number'},
                        'y': {'type': 'number'},
                        'r': {'type': 'number', 'exclusiveMinimum': 0}
                    }
                }
            },
            'metadata': {'type': 'object'}
        }
    }

    def to_json_object(self) -> dict:
        json_object = {
            'lattice': self._lattice.to_json(),
            'disks': [
                {'x': float(center.real), 'y': float(center.imag), 'r': float(radius)}
                for center, radius in zip(self._centers, self._radii)]}
        if self.metadata:
            json_object['metadata'] = self.metadata
        return json_object

    def __str__(self) -> str:
        """ Converts the configuration to a JSON string.

        :return: The JSON string version of the configuration.
        """
        return json.dumps(self.to_json_object(), indent=2)

    @staticmethod
    def from_json_object(json_object: dict, lattice: la.Lattice | None = None) -> DiskConfiguration:
        u.validate_json_object(
            json_object=json_object, json_schema=DiskConfiguration._schema,
            validation_error_message='The disk configuration does not follow the configuration JSON schema.')
        if lattice is None:
            lattice = la.Lattice.from_json(lattice_json=json_object['lattice'])
        disks: list[dict] = json_object['disks']
        return DiskConfiguration(
            lattice=lattice, centers=[complex(disk['x'], disk['y']) for disk in disks], radii=[disk['r'] for disk in disks],
            metadata=json_object.get('metadata'))

    @staticmethod
    def load_from_json(file_path: str, lattice: la.Lattice | None = None) -> DiskConfiguration:
        """ Loads a configuration saved with ``save_to_json``.

        :param file_path: Path to the JSON file. If reading from a ZIP archive, the file path must be in the following format: /path/to/zip-archive.zip:/path/to/file (e.g. ./archive.zip:sample.json).
        :param lattice: An already constructed lattice to reuse when it equals the one in the file.
        :return: The configuration.
        :raises ValidationError: Raised if the JSON file does not follow the configuration JSON schema.
        """
        json_object = u.load_json_file(
            file_path=file_path, json_schema=DiskConfiguration._schema,
            validation_error_message=f'Failed to load the disk configuration. The JSON file at {file_path} does not follow the '
                                     f'configuration JSON schema.')
        file_lattice = la.Lattice.from_json(lattice_json=json_object['lattice'], n_max=2)
        if lattice is None or lattice != file_lattice:
            lattice = la.Lattice.from_json(lattice_json=json_object['lattice'])
        return DiskConfiguration.from_json_object(json_object=json_object, lattice=lattice)

    def save_to_json(self, file_path: str) -> None:
        u.save_output(output_target=file_path, output_content=str(self))

    @staticmethod
    def load_from_csv(file_path: str, lattice: la.Lattice | None = None) -> DiskConfiguration:
        """ Loads a configuration from a CSV file with the columns x, y and r.

        :param file_path: Path to the CSV file.
        :param lattice: The lattice of the cell. Defaults to the unit square.
        :return: The configuration.
        """
        header, rows = u.read_csv(file_path=file_path)
        if [column.strip() for column in header] != ['x', 'y', 'r']:
            raise ConfigurationError(f'The CSV file at {file_path} must have the header x,y,r, got {",".join(header)}')
        lattice = lattice if lattice is not None else la.Lattice.square()
        values = np.array([[float(value) for value in row] for row in rows])
        if values.size == 0:
            raise ConfigurationError(f'The CSV file at {file_path} has no disks')
        return DiskConfiguration(lattice=lattice, centers=values[:, 0] + 1j * values[:, 1], radii=values[:, 2])

    def to_csv(self) -> str:
        return u.to_csv(
            header=['x', 'y', 'r'],
            rows=([float(center.real), float(center.imag), float(radius)] for center, radius in zip(self._centers, self._radii)))

    @staticmethod
    def load(file_path: str, lattice: la.Lattice | None = None) -> DiskConfiguration:
        """Loads a configuration from a ".csv" file or otherwise a JSON file."""
        if file_path.endswith('.csv'):
            return DiskConfiguration.load_from_csv(file_path=file_path, lattice=lattice)
        return DiskConfiguration.load_from_json(file_path=file_path, lattice=lattice)


def find_overlap(
        lattice: la.Lattice, centers: np.ndarray, radii: np.ndarray, slack: float = 1e-12) -> tuple[int, int, float] | None:
    """ Finds a pair of disks closer than the sum of their radii under the periodic metric.

    :param lattice: The lattice of the cell.
    :param centers: The disk centers.
    :param radii: The disk radii.
    :param slack: The tolerated overlap.
    :return: The first overlapping pair (j, k, distance) or None.
    """
    n_disks = centers.size
    for j in range(n_disks - 1):
        distances = lattice.periodic_distance(z=centers[j + 1:] - centers[j])
        too_close = np.flatnonzero(distances < radii[j + 1:] + radii[j] - slack)
        if too_close.size:
            k = j + 1 + too_close[0]
            return j, int(k), float(distances[too_close[0]])
    # A disk must not overlap its own periodic images either
    for j in range(n_disks):
        if 2 * radii[j] > lattice.shortest_period + slack:
            return j, j, lattice.shortest_period
    return None
