# noinspection PyPackageRequirements
import pytest as pt
import json
import math
import numpy as np
import jsonschema as js
import scipy.stats as st
import composite_sums.configuration as c
import composite_sums.lattice as la
import composite_sums.microgen as mg
import composite_sums.sums as s
import dev.utils as u


def test_rsa_deterministic():
    spec = mg.GeneratorSpec(protocol='rsa', n=64, concentration=0.3, seed=4)
    first = mg.generate(spec=spec)
    second = mg.generate(spec=spec)
    np.testing.assert_array_equal(first.centers, second.centers)
    np.testing.assert_array_equal(first.radii, second.radii)
    assert first.n_disks == 64
    assert first.concentration == pt.approx(0.3, rel=1e-12)
    assert first.metadata['protocol'] == 'rsa'
    assert first.metadata['seed'] == 4
    assert first.metadata['generator'] == spec.to_json_object()
    other = mg.generate(spec=spec, seed=5)
    assert not np.array_equal(other.centers, first.centers)


@pt.mark.parametrize('radii_law', ['identical', 'uniform', 'normal'])
def test_rsa_radii_laws(radii_law: str):
    config = mg.generate(spec=mg.GeneratorSpec(protocol='rsa', n=40, concentration=0.4, radii_law=radii_law, seed=1))
    assert config.concentration == pt.approx(0.4, rel=1e-12)
    assert np.all(np.diff(config.radii) <= 0)
    if radii_law == 'identical':
        assert np.all(config.radii == config.radii[0])
    else:
        assert config.radii.max() > config.radii.min()
    assert c.find_overlap(lattice=config.lattice, centers=config.centers, radii=config.radii) is None


def test_rsa_saturation():
    spec = mg.GeneratorSpec(protocol='rsa', n=64, concentration=0.9, max_attempts=10_000)
    with pt.raises(mg.SaturationError) as error:
        mg.generate(spec=spec)
    assert 0 < error.value.achieved < 64
    assert str(error.value).startswith('RSA saturated after 10000 rejected insertions')


test_invalid_spec_data = [
    ({'protocol': 'rsa', 'n': 10, 'concentration': 0.95}, 'The concentration 0.95 is out of range for the rsa protocol'),
    ({'protocol': 'square', 'n': 16, 'concentration': 0.8}, 'The concentration 0.8 is out of range for the square protocol'),
    ({'protocol': 'rsa', 'n': 0, 'concentration': 0.3}, 'The number of disks or shapes must be at least 1, got 0'),
    ({'protocol': 'walk', 'n': 10, 'concentration': 0.3}, 'Invalid protocol "walk". Valid values are: rsa, mc_walk, hexagonal, square, rsa_shapes'),
    ({'protocol': 'mc_walk', 'n': 10, 'concentration': 0.3, 'step_law': 'Z4'}, 'Invalid step_law "Z4". Valid values are: Z1, Z2, Z3'),
    ({'protocol': 'mc_walk', 'n': 10, 'concentration': 0.3, 'cycles': -1}, 'The number of cycles must be non-negative, got -1'),
    ({'protocol': 'rsa_shapes', 'n': 2, 'concentration': 0.3, 'shape_id': 10}, 'The shape ID must be between 0 and 9, got 10')]


@pt.mark.parametrize('kwargs,expected_start', test_invalid_spec_data)
def test_invalid_spec(kwargs: dict, expected_start: str):
    with pt.raises(ValueError) as error:
        mg.GeneratorSpec(**kwargs)
    assert str(error.value).startswith(expected_start)


def test_spec_json(tmp_path):
    spec = mg.GeneratorSpec(protocol='mc_walk', n=16, concentration=0.5, step_law='Z3', cycles=7, seed=9)
    assert spec.lattice == 'square'
    assert mg.GeneratorSpec(protocol='hexagonal', n=16, concentration=0.5).lattice == 'hexagonal'
    file_path = u.write_spec(str(tmp_path / 'spec.json'), protocol='mc_walk', N=16, concentration=0.5, step_law='Z3', cycles=7, seed=9)
    loaded = mg.GeneratorSpec.load_from_json(file_path=file_path)
    assert loaded.to_json_object() == spec.to_json_object()
    assert json.loads(str(loaded)) == spec.to_json_object()
    replaced = spec.replace(cycles=0)
    assert replaced.cycles == 0 and replaced.step_law == 'Z3'


def test_spec_json_invalid(tmp_path, caplog):
    file_path = u.write_spec(str(tmp_path / 'spec.json'), protocol='rsa', n=16, concentration=0.5)
    with pt.raises(js.exceptions.ValidationError):
        mg.GeneratorSpec.load_from_json(file_path=file_path)
    u.assert_error(
        message=f'Failed to load the generator spec. The JSON file at {file_path} does not follow the generator spec JSON schema.',
        caplog=caplog)


def test_spawn_seeds():
    seeds = mg.spawn_seeds(seed=3, count=5)
    assert seeds == mg.spawn_seeds(seed=3, count=5)
    assert len(set(seeds)) == 5
    assert seeds[:2] == mg.spawn_seeds(seed=3, count=2)
    assert seeds != mg.spawn_seeds(seed=4, count=5)


def test_step_laws():
    rng = mg.make_rng(seed=0)
    z1 = mg.draw_step(law='Z1', rng=rng, size=100_000)
    assert np.all((z1 >= 0) & (z1 <= 1))
    assert abs(z1.mean() - 0.5) < 0.01
    z2 = mg.draw_step(law='Z2', rng=rng, size=100_000)
    assert np.all((z2 >= 0) & (z2 <= 1))
    assert abs(z2.mean() - 0.5) < 0.01
    assert z2.std() < z1.std()
    z3 = mg.draw_step(law='Z3', rng=rng, size=100_000)
    assert np.all((z3 >= 0) & (z3 < 1))
    # Z3 piles up near the ends of [0, 1)
    assert np.mean((z3 < 0.25) | (z3 > 0.75)) > 0.8
    assert isinstance(mg.draw_step(law='Z2', rng=rng), float)
    with pt.raises(ValueError):
        mg.draw_step(law='Z0', rng=rng)


def test_mc_walk_zero_cycles():
    spec = mg.GeneratorSpec(protocol='mc_walk', n=16, concentration=0.5, cycles=0)
    initial = mg.gen_rsa(spec=spec)
    assert mg.gen_mc_walk(spec=spec, initial=initial) is initial


@pt.mark.parametrize('step_law', ['Z1', 'Z2', 'Z3'])
def test_mc_walk(step_law: str):
    spec = mg.GeneratorSpec(protocol='mc_walk', n=16, concentration=0.5, step_law=step_law, cycles=5, seed=2)
    config = mg.generate(spec=spec)
    initial = mg.gen_rsa(spec=spec, rng=mg.make_rng(seed=2))
    assert config.n_disks == 16
    np.testing.assert_array_equal(config.radii, initial.radii)
    assert not np.allclose(config.centers, initial.centers)
    assert c.find_overlap(lattice=config.lattice, centers=config.centers, radii=config.radii, slack=1e-12) is None
    assert config.metadata['protocol'] == 'mc_walk'
    assert config.metadata['step_law'] == step_law
    np.testing.assert_array_equal(mg.generate(spec=spec).centers, config.centers)


def test_mc_walk_from_square_array():
    spec = mg.GeneratorSpec(protocol='mc_walk', n=16, concentration=0.6, initial='square', cycles=3)
    config = mg.generate(spec=spec)
    assert config.concentration == pt.approx(0.6, rel=1e-12)
    assert c.find_overlap(lattice=config.lattice, centers=config.centers, radii=config.radii) is None


def test_collision_bounds(square):
    centers = np.array([0.0, 0.5])
    radii = np.array([0.1, 0.1])
    d_min, d_max = mg.collision_bounds(lattice=square, centers=centers, radii=radii, k=0, phi=0.0)
    assert d_max == pt.approx(0.3, abs=1e-12)
    assert d_min == pt.approx(-0.3, abs=1e-12)
    d_min, d_max = mg.collision_bounds(lattice=square, centers=centers, radii=radii, k=0, phi=math.pi / 2)
    assert d_max == pt.approx(0.8, abs=1e-12)
    assert d_min == pt.approx(-0.8, abs=1e-12)
    d_min, d_max = mg.collision_bounds(lattice=square, centers=centers[:1], radii=radii[:1], k=0, phi=0.0, cap=0.5)
    assert (d_min, d_max) == (-0.5, 0.5)


def test_collision_bounds_touching(square):
    centers = np.array([0.0, 0.2])
    radii = np.array([0.1, 0.1])
    d_min, d_max = mg.collision_bounds(lattice=square, centers=centers, radii=radii, k=0, phi=0.0)
    assert d_max == pt.approx(0.0, abs=1e-12)
    assert d_min == pt.approx(-0.6, abs=1e-12)


def test_square_array():
    config = mg.generate(spec=mg.GeneratorSpec(protocol='square', n=16, concentration=0.5))
    assert config.n_disks == 16
    assert config.concentration == pt.approx(0.5, rel=1e-12)
    assert config.lattice == la.Lattice.square(n_max=2)
    for k in range(16):
        distances = config.lattice.periodic_distance(z=np.delete(config.centers, k) - config.centers[k])
        assert distances.min() == pt.approx(0.25, abs=1e-12)
        assert np.sum(np.isclose(distances, 0.25, atol=1e-12)) == 4


def test_hexagonal_array():
    config = mg.generate(spec=mg.GeneratorSpec(protocol='hexagonal', n=16, concentration=0.5))
    spacing = abs(config.lattice.omega1) / 4
    for k in range(16):
        distances = config.lattice.periodic_distance(z=np.delete(config.centers, k) - config.centers[k])
        assert np.sum(np.isclose(distances, spacing, atol=1e-12)) == 6
        assert distances.min() == pt.approx(spacing, abs=1e-12)


test_invalid_regular_data = [
    ({'protocol': 'square', 'n': 15, 'concentration': 0.5}, 'The square array needs a perfect square number of disks, got 15'),
    ({'protocol': 'hexagonal', 'n': 16, 'concentration': 0.5, 'lattice': 'square'},
     'The hexagonal array needs the hexagonal lattice, got the square lattice')]


@pt.mark.parametrize('kwargs,expected_message', test_invalid_regular_data)
def test_invalid_regular(kwargs: dict, expected_message: str):
    with pt.raises(ValueError) as error:
        mg.generate(spec=mg.GeneratorSpec(**kwargs))
    u.assert_exception(expected_message=expected_message, exception=error)


def test_shape_library():
    library = mg.load_shape_library()
    assert len(library) == 10
    for shape_id in range(10):
        offsets = mg.shape_offsets(shape_id=shape_id, radius=0.5)
        assert offsets.size == 21
        assert abs(offsets.mean()) < 1e-12
        distances = np.abs(offsets[:, np.newaxis] - offsets[np.newaxis, :])
        np.fill_diagonal(distances, np.inf)
        # Disks of a shape do not overlap and each touches another one
        assert distances.min() == pt.approx(1.0, abs=1e-12)
        assert np.allclose(distances.min(axis=1), 1.0, atol=1e-12)


@pt.mark.parametrize('shape_id', [0, 2, 4, 6, 8])
def test_shape_mirror_pairs(shape_id: int):
    def canonical(points: np.ndarray) -> list:
        return sorted((round(point.real, 9) + 0.0, round(point.imag, 9) + 0.0) for point in points)
    shape = mg.shape_offsets(shape_id=shape_id, radius=0.5)
    mirror = mg.shape_offsets(shape_id=shape_id + 1, radius=0.5)
    assert canonical(-shape.conjugate()) == canonical(mirror)
    assert canonical(shape) != canonical(mirror)


def test_rsa_shapes():
    spec = mg.GeneratorSpec(protocol='rsa_shapes', n=5, concentration=0.3, shape_id=3, seed=8)
    config = mg.generate(spec=spec)
    assert config.n_disks == 105
    assert config.concentration == pt.approx(0.3, rel=1e-12)
    assert config.metadata['shape_id'] == 3
    assert config.metadata['shape_of_disk'] == [copy for copy in range(5) for _ in range(21)]
    offsets = mg.shape_offsets(shape_id=3, radius=config.r)
    first_copy = config.lattice.reduce(z=config.centers[:21] - config.centers[0])
    np.testing.assert_allclose(first_copy, config.lattice.reduce(z=offsets - offsets[0]), atol=1e-12)
    np.testing.assert_array_equal(mg.generate(spec=spec).centers, config.centers)


@pt.mark.parametrize('n_workers', [1, 2])
def test_generate_many(n_workers: int):
    spec = mg.GeneratorSpec(protocol='rsa', n=10, concentration=0.3, radii_law='normal')
    seeds = mg.spawn_seeds(seed=1, count=3)
    configs = mg.generate_many(spec=spec, seeds=seeds, n_workers=n_workers)
    assert [config.metadata['seed'] for config in configs] == seeds
    for config, seed in zip(configs, seeds):
        np.testing.assert_array_equal(config.centers, mg.generate(spec=spec, seed=seed).centers)


@pt.mark.slow
def test_mc_e2_is_normal(square_ev):
    spec = mg.GeneratorSpec(protocol='mc_walk', n=64, concentration=0.45, cycles=10)
    configs = mg.generate_many(spec=spec, seeds=mg.spawn_seeds(seed=0, count=500), n_workers=4)
    e2 = [s.eval_sum(config=config, order=s.MultiOrder(p=(2,)), ev=square_ev).real for config in configs]
    assert st.normaltest(e2).pvalue > 0.01
