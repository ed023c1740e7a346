"""
Generating Random Composites
~~~~~~~~~~~~~~~~~~~~~~~~~~~~
|Functionality| for generating disk configurations by random sequential adsorption (RSA), by the collision-bounded Monte Carlo
walk, as regular square and hexagonal arrays, and by RSA of rigid multi-disk shapes.
"""
from __future__ import annotations
import cmath
import functools as ft
import json
import logging as log
import math
import multiprocessing as mp
import os
import numpy as np
import scipy.stats as st
import tqdm
from . import configuration as c
from . import lattice as la
from . import _utils as u

MAX_RANDOM_CONCENTRATION = math.pi / (2 * math.sqrt(3))
SHAPE_LIBRARY_PATH = os.path.join(os.path.dirname(__file__), 'shapes.json')


class SaturationError(RuntimeError):
    """Raised when random insertion gives up. ``achieved`` is the number of disks (or shapes) placed before giving up."""
    def __init__(self, message: str, achieved: int) -> None:
        super(SaturationError, self).__init__(message)
        self.achieved = achieved


class GeneratorSpec:
    """
    The complete description of a generator run. Together with the seed it determines the generated configuration.

    :ivar str protocol: One of rsa, mc_walk, hexagonal, square or rsa_shapes.
    :ivar int n: The number of disks, or of shapes for rsa_shapes.
    :ivar float concentration: The target area fraction.
    :ivar str radii_law: One of identical, uniform or normal.
    :ivar str step_law: One of Z1, Z2 or Z3 (mc_walk only).
    :ivar int cycles: The number of Monte Carlo cycles (mc_walk only).
    :ivar int shape_id: The shape of the shape library to place (rsa_shapes only).
    :ivar int seed: The seed of the pseudorandom generator.
    :ivar str initial: The start state of a Monte Carlo walk, one of rsa, square or hexagonal.
    :ivar str lattice: The lattice preset of the cell.
    :ivar int max_attempts: The number of rejected insertions after which RSA gives up.
    """
    PROTOCOLS = ('rsa', 'mc_walk', 'hexagonal', 'square', 'rsa_shapes')
    RADII_LAWS = ('identical', 'uniform', 'normal')
    STEP_LAWS = ('Z1', 'Z2', 'Z3')
    INITIAL_STATES = ('rsa', 'square', 'hexagonal')

    def __init__(
            self, protocol: str, n: int, concentration: float, radii_law: str = 'identical', step_law: str = 'Z1', cycles: int = 100,
            shape_id: int = 0, seed: int = 0, initial: str = 'rsa', lattice: str | None = None, max_attempts: int = 10 ** 6,
            radii_spread: float = 0.5, radii_sigma: float = 0.25, radii_floor: float = 0.1) -> None:
        """
        :param protocol: One of rsa, mc_walk, hexagonal, square or rsa_shapes.
        :param n: The number of disks, or of shapes for rsa_shapes.
        :param concentration: The target area fraction.
        :param radii_law: One of identical, uniform (on [1 - spread, 1 + spread] times the mean radius) or normal (mean radius times 1 + sigma Z, Z truncated to [-3, 3], floored at ``radii_floor``).
        :param step_law: One of Z1, Z2 or Z3.
        :param cycles: The number of Monte Carlo cycles.
        :param shape_id: The shape placed by rsa_shapes, 0 to 9.
        :param seed: The seed of the pseudorandom generator.
        :param initial: The start state of a Monte Carlo walk.
        :param lattice: The lattice preset of the cell. Defaults to hexagonal for the hexagonal protocol and square otherwise.
        :param max_attempts: The number of rejected insertions after which RSA gives up.
        :param radii_spread: The relative half-width of the uniform radii law.
        :param radii_sigma: The relative standard deviation of the normal radii law.
        :param radii_floor: The smallest relative radius of the normal radii law.
        :raises ValueError: Raised for parameters outside their valid ranges.
        """
        _check_choice(name='protocol', value=protocol, valid=GeneratorSpec.PROTOCOLS)
        _check_choice(name='radii_law', value=radii_law, valid=GeneratorSpec.RADII_LAWS)
        _check_choice(name='step_law', value=step_law, valid=GeneratorSpec.STEP_LAWS)
        _check_choice(name='initial', value=initial, valid=GeneratorSpec.INITIAL_STATES)
        lattice = lattice if lattice is not None else ('hexagonal' if protocol == 'hexagonal' else 'square')
        _check_choice(name='lattice', value=lattice, valid=la.Lattice.PRESETS)
        if n < 1:
            raise ValueError(f'The number of disks or shapes must be at least 1, got {n}')
        max_concentration = GeneratorSpec.max_concentration(protocol=protocol)
        if not 0 < concentration < max_concentration:
            raise ValueError(
                f'The concentration {concentration} is out of range for the {protocol} protocol. Valid values are between 0 and '
                f'{max_concentration:.6f}, non-inclusive')
        if cycles < 0:
            raise ValueError(f'The number of cycles must be non-negative, got {cycles}')
        if not 0 <= shape_id <= 9:
            raise ValueError(f'The shape ID must be between 0 and 9, got {shape_id}')
        if max_attempts < 1:
            raise ValueError(f'max_attempts must be at least 1, got {max_attempts}')
        if not 0 <= radii_spread < 1:
            raise ValueError(f'radii_spread must be within [0, 1), got {radii_spread}')
        if not radii_sigma >= 0 or not 0 < radii_floor <= 1:
            raise ValueError(f'radii_sigma must be non-negative and radii_floor within (0, 1], got {radii_sigma} and {radii_floor}')
        self.protocol = protocol
        self.n = n
        self.concentration = concentration
        self.radii_law = radii_law
        self.step_law = step_law
        self.cycles = cycles
        self.shape_id = shape_id
        self.seed = seed
        self.initial = initial
        self.lattice = lattice
        self.max_attempts = max_attempts
        self.radii_spread = radii_spread
        self.radii_sigma = radii_sigma
        self.radii_floor = radii_floor

    @staticmethod
    def max_concentration(protocol: str) -> float:
        return math.pi / 4 if protocol == 'square' else MAX_RANDOM_CONCENTRATION

    def get_lattice(self) -> la.Lattice:
        return la.Lattice.from_preset(name=self.lattice)

    def replace(self, **changes) -> GeneratorSpec:
        json_object = self.to_json_object()
        json_object.update(changes)
        return GeneratorSpec.from_json_object(json_object=json_object)

    _schema = {
        'type': 'object',
        'required': ['protocol', 'N', 'concentration'],
        'additionalProperties': False,
        'properties': {
            'protocol': {'type': 'string', 'enum': list(PROTOCOLS)},
            'N': {'type': 'integer', 'minimum': 1},
            'concentration': {'type': 'number', 'exclusiveMinimum': 0, 'exclusiveMaximum': 1},
            'radii_law': {'type': 'string', 'enum': list(RADII_LAWS)},
            'step_law': {'type': 'string', 'enum': list(STEP_LAWS)},
            'cycles': {'type': 'integer', 'minimum': 0},
            'shape_id': {'type': 'integer', 'minimum': 0, 'maximum': 9},
            'seed': {'type': 'integer', 'minimum': 0},
            'initial': {'type': 'string', 'enum': list(INITIAL_STATES)},
            'lattice': {'type': 'string', 'enum': list(la.Lattice.PRESETS)},
            'max_attempts': {'type': 'integer', 'minimum': 1},
            'radii_spread': {'type': 'number', 'minimum': 0, 'exclusiveMaximum': 1},
            'radii_sigma': {'type': 'number', 'minimum': 0},
            'radii_floor': {'type': 'number', 'exclusiveMinimum': 0, 'maximum': 1}
        }
    }

    def to_json_object(self) -> dict:
        return {
            'protocol': self.protocol, 'N': self.n, 'concentration': self.concentration, 'radii_law': self.radii_law,
            'step_law': self.step_law, 'cycles': self.cycles, 'shape_id': self.shape_id, 'seed': self.seed, 'initial': self.initial,
            'lattice': self.lattice, 'max_attempts': self.max_attempts, 'radii_spread': self.radii_spread,
            'radii_sigma': self.radii_sigma, 'radii_floor': self.radii_floor}

    def __str__(self) -> str:
        return json.dumps(self.to_json_object(), indent=2)

    @staticmethod
    def from_json_object(json_object: dict) -> GeneratorSpec:
        u.validate_json_object(
            json_object=json_object, json_schema=GeneratorSpec._schema,
            validation_error_message='The generator spec does not follow the generator spec JSON schema.')
        json_object = dict(json_object)
        n = json_object.pop('N')
        return GeneratorSpec(n=n, **json_object)

    @staticmethod
    def load_from_json(file_path: str) -> GeneratorSpec:
        """ Loads a generator spec from a JSON file.

        :param file_path: Path to the JSON file.
        :return: The generator spec.
        :raises ValidationError: Raised if the JSON file does not follow the generator spec JSON schema.
        """
        json_object = u.load_json_file(
            file_path=file_path, json_schema=GeneratorSpec._schema,
            validation_error_message=f'Failed to load the generator spec. The JSON file at {file_path} does not follow the '
                                     f'generator spec JSON schema.')
        return GeneratorSpec.from_json_object(json_object=json_object)


def _check_choice(name: str, value: str, valid: tuple[str, ...]) -> None:
    if value not in valid:
        raise ValueError(f'Invalid {name} "{value}". Valid values are: {", ".join(valid)}')


def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    """The pseudorandom generator of every protocol: PCG64 seeded by ``seed``."""
    return np.random.Generator(np.random.PCG64(seed))


def spawn_seeds(seed: int, count: int) -> list[int]:
    """ Derives independent per-sample seeds from one seed.

    :param seed: The parent seed.
    :param count: The number of seeds.
    :return: The seeds.
    """
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]


def draw_step(law: str, rng: np.random.Generator, size: int | None = None) -> float | np.ndarray:
    """ Draws the relative step Z of the Monte Carlo walk. Z1 is uniform on [0, 1]; with Z_N standard normal truncated to [-3, 3],
    Z2 = Z_N / 6 + 1/2 and Z3 = frac(Z_N / 6 + 1).

    :param law: One of Z1, Z2 or Z3.
    :param rng: The pseudorandom generator.
    :param size: The number of draws, or None for a single float.
    :return: The draw(s).
    """
    _check_choice(name='step_law', value=law, valid=GeneratorSpec.STEP_LAWS)
    if law == 'Z1':
        draws = rng.uniform(0.0, 1.0, size=size)
    else:
        normal = st.truncnorm.rvs(-3, 3, size=size, random_state=rng)
        draws = normal / 6 + 0.5 if law == 'Z2' else np.mod(normal / 6 + 1, 1.0)
    return float(draws) if size is None else np.asarray(draws)


def draw_radii(spec: GeneratorSpec, rng: np.random.Generator, count: int | None = None) -> np.ndarray:
    """ Draws the radii of the radii law and scales them so that the disks reach the spec's concentration.

    :param spec: The generator spec.
    :param rng: The pseudorandom generator.
    :param count: The number of radii. Defaults to the spec's N.
    :return: The radii.
    """
    count = count if count is not None else spec.n
    if spec.radii_law == 'identical':
        relative = np.ones(count)
    elif spec.radii_law == 'uniform':
        relative = rng.uniform(1 - spec.radii_spread, 1 + spec.radii_spread, size=count)
    else:
        relative = st.truncnorm.rvs(-3, 3, loc=1, scale=spec.radii_sigma, size=count, random_state=rng)
        relative = np.maximum(relative, spec.radii_floor)
    area = la.Lattice.from_preset(name=spec.lattice, n_max=2).area
    return relative * math.sqrt(spec.concentration * area / (math.pi * math.fsum(relative ** 2)))


def _check_self_overlap(lattice: la.Lattice, radii: np.ndarray) -> None:
    if 2 * radii.max() > lattice.shortest_period:
        raise ValueError(
            f'A disk of radius {radii.max()} overlaps its own periodic images. Use more disks or a lower concentration')


def _random_position(lattice: la.Lattice, rng: np.random.Generator) -> complex:
    t1, t2 = rng.uniform(-0.5, 0.5, size=2)
    return complex(lattice.from_lattice_coordinates(t1=t1, t2=t2))


def gen_rsa(spec: GeneratorSpec, rng: np.random.Generator | None = None) -> c.DiskConfiguration:
    """ Places disks one at a time at uniformly random positions, largest first, rejecting positions that overlap a placed disk
    under the periodic metric.

    :param spec: The generator spec.
    :param rng: The pseudorandom generator. Defaults to one seeded by the spec.
    :return: The configuration.
    :raises SaturationError: Raised after ``spec.max_attempts`` rejections.
    """
    rng = rng if rng is not None else make_rng(seed=spec.seed)
    lattice = spec.get_lattice()
    radii = draw_radii(spec=spec, rng=rng)
    radii = radii[np.argsort(-radii, kind='stable')]
    _check_self_overlap(lattice=lattice, radii=radii)
    centers = np.zeros(radii.size, dtype=complex)
    rejections = 0
    for k in range(radii.size):
        while True:
            candidate = _random_position(lattice=lattice, rng=rng)
            if k == 0 or np.all(lattice.periodic_distance(z=centers[:k] - candidate) >= radii[:k] + radii[k]):
                break
            rejections += 1
            if rejections >= spec.max_attempts:
                raise SaturationError(
                    f'RSA saturated after {rejections} rejected insertions with {k} of {radii.size} disks placed', achieved=k)
        centers[k] = candidate
    log.debug(f'RSA placed {radii.size} disks with {rejections} rejections')
    return c.DiskConfiguration(lattice=lattice, centers=centers, radii=radii, metadata={'protocol': 'rsa'})


def collision_bounds(
        lattice: la.Lattice, centers: np.ndarray, radii: np.ndarray, k: int, phi: float, cap: float | None = None,
        shell: int = 2) -> tuple[float, float]:
    """ The collision-free range of displacements of disk k along the direction phi: d_max >= 0 along phi and d_min <= 0 along
    phi + pi. Every periodic image within ``shell`` rings of the other disks (and of disk k itself) is an obstacle.

    :param lattice: The lattice of the cell.
    :param centers: The disk centers.
    :param radii: The disk radii.
    :param k: The moving disk.
    :param phi: The direction of motion.
    :param cap: The largest allowed |d|. Defaults to the shortest period.
    :param shell: The rings of periodic images considered.
    :return: The pair (d_min, d_max).
    """
    cap = cap if cap is not None else lattice.shortest_period
    direction = cmath.exp(1j * phi)
    translates = lattice.lattice_points(shell=shell, include_origin=True)
    relative = lattice.reduce(z=centers - centers[k])[:, np.newaxis] + translates[np.newaxis, :]
    reach = np.broadcast_to((radii + radii[k])[:, np.newaxis], relative.shape)
    obstacle = np.ones(relative.shape, dtype=bool)
    obstacle[k, translates == 0] = False
    projection = (direction.conjugate() * relative).real
    perpendicular2 = np.abs(relative) ** 2 - projection ** 2
    hit = obstacle & (perpendicular2 < reach ** 2)
    root = np.sqrt(np.maximum(reach ** 2 - perpendicular2, 0))
    forward = hit & (projection > 0)
    backward = hit & (projection < 0)
    d_max = float((projection - root)[forward].min()) if forward.any() else cap
    d_min = float((projection + root)[backward].max()) if backward.any() else -cap
    return max(-cap, min(d_min, 0.0)), min(cap, max(d_max, 0.0))


def _initial_state(spec: GeneratorSpec, rng: np.random.Generator) -> c.DiskConfiguration:
    if spec.initial == 'rsa':
        return gen_rsa(spec=spec, rng=rng)
    return gen_regular(spec=spec.replace(protocol=spec.initial))


def gen_mc_walk(
        spec: GeneratorSpec, initial: c.DiskConfiguration | None = None, rng: np.random.Generator | None = None) -> c.DiskConfiguration:
    """ Runs ``spec.cycles`` cycles of the Monte Carlo walk. In a cycle every disk in index order draws a direction phi uniform on
    (0, pi), computes its collision-free range [d_min, d_max] along phi, draws Z from the step law and moves by
    d_min + (d_max - d_min) Z along phi; its center is then reduced into the cell.

    :param spec: The generator spec.
    :param initial: The start configuration. Defaults to the spec's initial state, drawn from ``rng``.
    :param rng: The pseudorandom generator. Defaults to one seeded by the spec.
    :return: The configuration after the walk (``initial`` itself if there are no cycles).
    """
    rng = rng if rng is not None else make_rng(seed=spec.seed)
    if initial is None:
        initial = _initial_state(spec=spec, rng=rng)
    if spec.cycles == 0:
        return initial
    lattice = initial.lattice
    centers = initial.centers.copy()
    radii = initial.radii
    for _ in range(spec.cycles):
        for k in range(centers.size):
            phi = rng.uniform(0, math.pi)
            d_min, d_max = collision_bounds(lattice=lattice, centers=centers, radii=radii, k=k, phi=phi)
            step = draw_step(law=spec.step_law, rng=rng)
            centers[k] = complex(lattice.reduce(z=centers[k] + (d_min + (d_max - d_min) * step) * cmath.exp(1j * phi)))
    metadata = dict(initial.metadata)
    metadata.update({'protocol': 'mc_walk', 'step_law': spec.step_law, 'cycles': spec.cycles})
    return c.DiskConfiguration(lattice=lattice, centers=centers, radii=radii, metadata=metadata)


def gen_regular(spec: GeneratorSpec) -> c.DiskConfiguration:
    """ Places N = n^2 identical disks on an n x n grid in lattice coordinates: a square array on the square lattice and a
    hexagonal array on the hexagonal lattice.

    :param spec: The generator spec, with protocol square or hexagonal.
    :return: The configuration.
    :raises ValueError: Raised if N is not a perfect square, the lattice does not match the array or the disks would overlap.
    """
    if spec.protocol not in ('square', 'hexagonal'):
        raise ValueError(f'Regular arrays are generated by the square and hexagonal protocols, got "{spec.protocol}"')
    if spec.lattice != spec.protocol:
        raise ValueError(f'The {spec.protocol} array needs the {spec.protocol} lattice, got the {spec.lattice} lattice')
    n_side = math.isqrt(spec.n)
    if n_side * n_side != spec.n:
        raise ValueError(f'The {spec.protocol} array needs a perfect square number of disks, got {spec.n}')
    lattice = spec.get_lattice()
    coordinates = (np.arange(n_side) + 0.5) / n_side - 0.5
    t1, t2 = np.meshgrid(coordinates, coordinates, indexing='ij')
    centers = lattice.from_lattice_coordinates(t1=t1.ravel(), t2=t2.ravel())
    radius = math.sqrt(spec.concentration * lattice.area / (math.pi * spec.n))
    if 2 * radius > lattice.shortest_period / n_side:
        raise ValueError(f'The concentration {spec.concentration} is too high for the {spec.protocol} array')
    return c.DiskConfiguration(
        lattice=lattice, centers=centers, radii=np.full(spec.n, radius), metadata={'protocol': spec.protocol})


_shape_library_schema = {
    'type': 'object',
    'required': ['version', 'grid', 'disks_per_shape', 'shapes'],
    'properties': {
        'version': {'type': 'integer', 'minimum': 1},
        'grid': {'type': 'string', 'enum': ['triangular']},
        'disks_per_shape': {'type': 'integer', 'minimum': 1},
        'shapes': {
            'type': 'array',
            'minItems': 10,
            'maxItems': 10,
            'items': {
                'type': 'object',
                'required': ['id', 'mirror_of', 'cells'],
                'properties': {
                    'id': {'type': 'integer', 'minimum': 0, 'maximum': 9},
                    'mirror_of': {'type': 'integer', 'minimum': 0, 'maximum': 9},
                    'cells': {
                        'type': 'array',
                        'items': {'type': 'array', 'minItems': 2, 'maxItems': 2, 'items': {'type': 'integer'}}
                    }
                }
            }
        }
    }
}


@ft.lru_cache(maxsize=None)
def load_shape_library(file_path: str = SHAPE_LIBRARY_PATH) -> tuple[np.ndarray, ...]:
    """ Loads the shape library: 10 shapes of 21 disks on a triangular close-packing grid, shape 2k + 1 being the mirror image of
    shape 2k. Cell [i, j] of a shape is the disk centered at (i + j/2, j sqrt(3)/2) in units of the disk diameter.

    :param file_path: Path to the shape library JSON file.
    :return: The cells of every shape, indexed by shape ID.
    """
    library = u.load_json_file(
        file_path=file_path, json_schema=_shape_library_schema,
        validation_error_message=f'The shape library at {file_path} is corrupted.')
    shapes = sorted(library['shapes'], key=lambda shape: shape['id'])
    for shape in shapes:
        if len(shape['cells']) != library['disks_per_shape']:
            raise ValueError(f'Shape {shape["id"]} has {len(shape["cells"])} disks instead of {library["disks_per_shape"]}')
    cells = tuple(np.array(shape['cells'], dtype=int) for shape in shapes)
    for shape_cells in cells:
        shape_cells.setflags(write=False)
    return cells


def shape_offsets(shape_id: int, radius: float) -> np.ndarray:
    """The centers of the disks of a shape relative to its centroid, for disks of the given radius."""
    cells = load_shape_library()[shape_id]
    offsets = 2 * radius * ((cells[:, 0] + cells[:, 1] / 2) + 1j * (cells[:, 1] * math.sqrt(3) / 2))
    return offsets - offsets.mean()


def gen_rsa_shapes(spec: GeneratorSpec, rng: np.random.Generator | None = None) -> c.DiskConfiguration:
    """ Places N copies of a rigid shape of 21 identical disks at uniformly random positions with a fixed orientation, rejecting a copy
    if any of its disks overlaps a placed disk under the periodic metric. The metadata records the shape ID and the copy each disk
    belongs to.

    :param spec: The generator spec.
    :param rng: The pseudorandom generator. Defaults to one seeded by the spec.
    :return: The configuration listing every constituent disk.
    :raises SaturationError: Raised after ``spec.max_attempts`` rejections.
    """
    rng = rng if rng is not None else make_rng(seed=spec.seed)
    lattice = spec.get_lattice()
    disks_per_shape = load_shape_library()[spec.shape_id].shape[0]
    n_disks = spec.n * disks_per_shape
    radius = math.sqrt(spec.concentration * lattice.area / (math.pi * n_disks))
    offsets = shape_offsets(shape_id=spec.shape_id, radius=radius)
    if c.find_overlap(lattice=lattice, centers=lattice.reduce(z=offsets), radii=np.full(offsets.size, radius)) is not None:
        raise ValueError(f'Shape {spec.shape_id} overlaps its own periodic images at the concentration {spec.concentration}')
    centers = np.zeros(0, dtype=complex)
    rejections = 0
    for placed in range(spec.n):
        while True:
            candidate = lattice.reduce(z=_random_position(lattice=lattice, rng=rng) + offsets)
            if placed == 0 or np.all(lattice.periodic_distance(z=candidate[:, np.newaxis] - centers[np.newaxis, :]) >= 2 * radius):
                break
            rejections += 1
            if rejections >= spec.max_attempts:
                raise SaturationError(
                    f'Shape RSA saturated after {rejections} rejected insertions with {placed} of {spec.n} shapes placed',
                    achieved=placed)
        centers = np.concatenate([centers, candidate])
    metadata = {
        'protocol': 'rsa_shapes', 'shape_id': spec.shape_id,
        'shape_of_disk': [copy for copy in range(spec.n) for _ in range(disks_per_shape)]}
    return c.DiskConfiguration(lattice=lattice, centers=centers, radii=np.full(n_disks, radius), metadata=metadata)


def generate(spec: GeneratorSpec, seed: int | None = None) -> c.DiskConfiguration:
    """ Generates one configuration with the spec's protocol. All random draws come from one PCG64 stream in the order: radii,
    insertion positions, then for every Monte Carlo move its direction followed by its step.

    :param spec: The generator spec.
    :param seed: Overrides the spec's seed.
    :return: The configuration, its metadata holding the spec and the seed.
    """
    seed = seed if seed is not None else spec.seed
    rng = make_rng(seed=seed)
    if spec.protocol == 'rsa':
        config = gen_rsa(spec=spec, rng=rng)
    elif spec.protocol == 'mc_walk':
        config = gen_mc_walk(spec=spec, rng=rng)
    elif spec.protocol == 'rsa_shapes':
        config = gen_rsa_shapes(spec=spec, rng=rng)
    else:
        config = gen_regular(spec=spec)
    config.metadata.update({'generator': spec.to_json_object(), 'seed': seed})
    return config


def generate_many(spec: GeneratorSpec, seeds: list[int], n_workers: int = 1) -> list[c.DiskConfiguration]:
    """ Generates one configuration per seed, in a pool of processes if ``n_workers`` > 1. The result does not depend on the number
    of workers.

    :param spec: The generator spec.
    :param seeds: The seed of every sample.
    :param n_workers: The number of processes.
    :return: The configurations in the order of the seeds.
    """
    progress_bar = tqdm.tqdm(total=len(seeds))
    configs = list[c.DiskConfiguration]()
    if n_workers <= 1:
        for seed in seeds:
            configs.append(generate(spec=spec, seed=seed))
            progress_bar.update(n=1)
    else:
        with mp.Pool(n_workers, initializer=_set_spec, initargs=(spec,)) as pool:
            async_results = [pool.apply_async(_generate_with_global_spec, (seed,)) for seed in seeds]
            for async_result in async_results:
                configs.append(async_result.get())
                progress_bar.update(n=1)
    progress_bar.close()
    return configs


_global_spec: GeneratorSpec | None = None


def _set_spec(spec: GeneratorSpec) -> None:
    """ Sets the generator spec as a global variable of each process within a multiprocessing pool.

    :param spec: The generator spec to make available to each process.
    """
    global _global_spec
    _global_spec = spec  # pragma: no cover


def _generate_with_global_spec(seed: int) -> c.DiskConfiguration:
    return generate(spec=_global_spec, seed=seed)  # pragma: no cover
