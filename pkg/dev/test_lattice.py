# noinspection PyPackageRequirements
import pytest as pt
import math
import numpy as np
import composite_sums.lattice as la
import dev.utils as u

SQUARE_S4 = 3.1512120021539


def test_square_lattice_sums(square):
    assert abs(la.lattice_sum_S2(lattice=square) - math.pi) < 1e-12
    assert abs(la.lattice_sum_Sn(lattice=square, n=4) - SQUARE_S4) < 1e-10
    assert abs(la.lattice_sum_Sn(lattice=square, n=6)) < 1e-10
    s8 = la.lattice_sum_Sn(lattice=square, n=8)
    assert abs(s8 - la.lattice_sum_direct(lattice=square, n=8)) < 1e-10


def test_hexagonal_lattice_sums(hexagonal):
    s2 = la.lattice_sum_S2(lattice=hexagonal)
    assert abs(s2 - la.lattice_sum_direct(lattice=hexagonal, n=2)) < 1e-8
    assert abs(s2 - math.pi) < 1e-10
    assert abs(la.lattice_sum_Sn(lattice=hexagonal, n=4)) < 1e-9
    assert abs(la.lattice_sum_Sn(lattice=hexagonal, n=6)) > 1
    s6 = la.lattice_sum_Sn(lattice=hexagonal, n=6)
    assert abs(s6 - la.lattice_sum_direct(lattice=hexagonal, n=6)) < 1e-9 * abs(s6)


@pt.mark.parametrize('n', [3, 5, 7, 13])
def test_odd_lattice_sums(square, n: int):
    assert la.lattice_sum_Sn(lattice=square, n=n) == 0


def test_lattice_sum_beyond_table():
    lattice = la.Lattice.square(n_max=8)
    expected = la.lattice_sum_Sn(lattice=la.Lattice.square(), n=12)
    assert abs(la.lattice_sum_Sn(lattice=lattice, n=12) - expected) < 1e-12


def test_lattice_sum_Sn_invalid(square):
    with pt.raises(ValueError) as error:
        la.lattice_sum_Sn(lattice=square, n=2)
    u.assert_exception(
        expected_message='lattice_sum_Sn requires n >= 3, got 2. Use lattice_sum_S2 for n = 2', exception=error)


test_invalid_lattice_data = [
    (1, -1j, 'The imaginary part of tau must be positive'),
    (1, 2, 'The imaginary part of tau must be positive'),
    (1, 0, 'Periods must be non-zero, got omega1=(1+0j) and omega2=0j')]


@pt.mark.parametrize('omega1,omega2,expected_message', test_invalid_lattice_data)
def test_invalid_lattice(omega1, omega2, expected_message: str):
    with pt.raises(la.InvalidLatticeError) as error:
        la.Lattice(omega1=omega1, omega2=omega2)
    assert str(error.value).endswith(expected_message)


def test_presets(square, hexagonal):
    assert square.area == pt.approx(1.0, abs=1e-15)
    assert hexagonal.area == pt.approx(1.0, abs=1e-14)
    assert square.to_json() == 'square'
    assert hexagonal.to_json() == 'hexagonal'
    assert la.Lattice.from_json(lattice_json='hexagonal') == hexagonal
    assert la.Lattice.from_string(lattice_string='square') == square
    custom = la.Lattice.from_string(lattice_string='1,0,0.5,2')
    assert custom.to_json() == {'omega1': [1.0, 0.0], 'omega2': [0.5, 2.0]}
    assert la.Lattice.from_json(lattice_json=custom.to_json()) == custom
    with pt.raises(ValueError) as error:
        la.Lattice.from_preset(name='triangle')
    u.assert_exception(expected_message='Unknown lattice preset "triangle". Valid values are: square, hexagonal', exception=error)


def test_reduce_and_contains(square, hexagonal):
    z = np.array([0.7 + 0.2j, -1.3 - 2.6j, 5.25 + 0.1j])
    reduced = square.reduce(z=z)
    np.testing.assert_allclose(reduced, [-0.3 + 0.2j, -0.3 + 0.4j, 0.25 + 0.1j], atol=1e-12)
    assert square.contains(z=reduced).all()
    assert not square.contains(z=0.6)
    shifted = hexagonal.reduce(z=0.1 + 0.2j + 3 * hexagonal.omega1 - 2 * hexagonal.omega2)
    assert abs(shifted - (0.1 + 0.2j)) < 1e-12


def test_periodic_distance(square):
    np.testing.assert_allclose(square.periodic_distance(z=np.array([0.9, 0.45 + 0.45j, 0.2j])), [0.1, 0.45 * math.sqrt(2), 0.2])


test_direct_lattice_sums_data = [
    ('square', 8), ('square', 10), ('square', 12), ('hexagonal', 8), ('hexagonal', 10), ('hexagonal', 12)]


@pt.mark.parametrize('lattice_name,n', test_direct_lattice_sums_data)
def test_lattice_sums_match_direct_summation(lattice_name: str, n: int):
    lattice = la.Lattice.from_preset(name=lattice_name)
    expected = la.lattice_sum_direct(lattice=lattice, n=n)
    assert abs(la.lattice_sum_Sn(lattice=lattice, n=n) - expected) <= 1e-10 * max(1.0, abs(expected))


def _random_cell_points(lattice: la.Lattice, count: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    t1, t2 = rng.uniform(-0.5, 0.5, size=(2, 2 * count))
    z = lattice.from_lattice_coordinates(t1=t1, t2=t2)
    return z[np.abs(z) > 0.01][:count]


@pt.mark.parametrize('lattice_name', ['square', 'hexagonal'])
@pt.mark.parametrize('n', range(2, 9))
def test_eisenstein_matches_row_summation_at_random_points(lattice_name: str, n: int):
    lattice = la.Lattice.from_preset(name=lattice_name)
    ev = la.EisensteinEvaluator(lattice=lattice)
    z = _random_cell_points(lattice=lattice, count=100, seed=n)
    assert z.size == 100
    np.testing.assert_allclose(ev.evaluate(n=n, z=z), la.eisenstein_by_rows(lattice=lattice, n=n, z=z), rtol=1e-8, atol=1e-8)


def test_eisenstein_matches_row_summation(square, square_ev):
    assert abs(square_ev.evaluate(n=2, z=0.5) - la.eisenstein_by_rows(lattice=square, n=2, z=0.5)) < 1e-6
    z = np.array([0.13 + 0.31j, -0.42 + 0.05j, 0.27 - 0.44j])
    for n in (2, 3, 4, 7):
        np.testing.assert_allclose(square_ev.evaluate(n=n, z=z), la.eisenstein_by_rows(lattice=square, n=n, z=z), rtol=1e-8)


def test_eisenstein_hexagonal_matches_row_summation(hexagonal, hexagonal_ev):
    z = np.array([0.21 + 0.11j, -0.35 + 0.3j])
    for n in (2, 5, 6):
        np.testing.assert_allclose(
            hexagonal_ev.evaluate(n=n, z=z), la.eisenstein_by_rows(lattice=hexagonal, n=n, z=z), rtol=1e-8)


@pt.mark.parametrize('n', [2, 3, 4, 5, 8, 11])
def test_eisenstein_parity(square_ev, n: int):
    rng = np.random.default_rng(7)
    z = rng.uniform(-0.5, 0.5, size=20) + 1j * rng.uniform(-0.5, 0.5, size=20)
    np.testing.assert_allclose(square_ev.evaluate(n=n, z=-z), (-1) ** n * square_ev.evaluate(n=n, z=z), rtol=1e-10, atol=1e-10)


def test_eisenstein_periodicity(hexagonal, hexagonal_ev):
    z = 0.17 - 0.23j
    value = hexagonal_ev.evaluate(n=3, z=z)
    for period in (hexagonal.omega1, hexagonal.omega2, hexagonal.omega1 - 2 * hexagonal.omega2):
        assert abs(hexagonal_ev.evaluate(n=3, z=z + period) - value) < 1e-10 * abs(value)


def test_eisenstein_at_origin(square_ev):
    assert square_ev.evaluate(n=2, z=0) == pt.approx(math.pi)
    assert square_ev.evaluate(n=4, z=0) == pt.approx(SQUARE_S4)
    assert square_ev.evaluate(n=3, z=0) == 0
    values = square_ev.evaluate(n=4, z=np.array([[0, 0.25], [0.25j, 0]]))
    assert values.shape == (2, 2)
    assert values[0, 0] == values[1, 1] == pt.approx(SQUARE_S4)


def test_eisenstein_at_origin_without_floating_point_errors(square_ev, hexagonal_ev):
    z = np.array([0, 0.25 + 0.1j, -0.3j])
    for ev in (square_ev, hexagonal_ev):
        with np.errstate(divide='raise', invalid='raise'):
            values = ev.evaluate(n=4, z=z)
        assert values[0] == ev.lattice_sum(n=4)
        assert np.all(np.isfinite(values))


def test_weierstrass_differential_equation(square_ev):
    rng = np.random.default_rng(3)
    z = rng.uniform(-0.5, 0.5, size=400) + 1j * rng.uniform(-0.5, 0.5, size=400)
    z = z[np.abs(z) > 0.2][:100]
    wp = square_ev.wp(z=z)
    residual = square_ev.wp_second_derivative(z=z) - 6 * wp ** 2 + 30 * square_ev.lattice_sum(n=4)
    assert np.all(np.abs(residual) < 1e-6 * np.maximum(1.0, np.abs(6 * wp ** 2)))


def test_eisenstein_function_module_level(square_ev):
    assert la.eisenstein_eval(ev=square_ev, n=2, z=0.25j) == square_ev.evaluate(n=2, z=0.25j)


def test_evaluator_without_shell(square, square_ev):
    ev = la.EisensteinEvaluator(lattice=square, shell=0)
    z = np.array([0.1 + 0.1j, -0.2 + 0.3j])
    np.testing.assert_allclose(ev.evaluate(n=4, z=z), square_ev.evaluate(n=4, z=z), rtol=1e-9)


def test_evaluator_needs_lattice_sums():
    ev = la.EisensteinEvaluator(lattice=la.Lattice.square(n_max=32))
    with pt.raises(ValueError) as error:
        ev.evaluate(n=2, z=0.1)
    u.assert_exception(
        expected_message='E_2 with series_order=64 needs lattice sums up to S_65 but the lattice only holds them up to n_max=32',
        exception=error)


test_invalid_evaluator_data = [
    ({'series_order': 1}, 'series_order must be at least 2, got 1'),
    ({'tolerance': 0}, 'tolerance must be positive, got 0'),
    ({'shell': -1}, 'shell must be non-negative, got -1')]


@pt.mark.parametrize('kwargs,expected_message', test_invalid_evaluator_data)
def test_invalid_evaluator(square, kwargs: dict, expected_message: str):
    with pt.raises(ValueError) as error:
        la.EisensteinEvaluator(lattice=square, **kwargs)
    u.assert_exception(expected_message=expected_message, exception=error)


def test_evaluate_invalid_index(square_ev):
    with pt.raises(ValueError) as error:
        square_ev.evaluate(n=1, z=0.1)
    u.assert_exception(expected_message='Eisenstein functions are defined for n >= 2, got n=1', exception=error)


def test_convergence_warning(square, caplog):
    ev = la.EisensteinEvaluator(lattice=square, series_order=4, tolerance=1e-14)
    ev.evaluate(n=2, z=0.45 + 0.45j)
    ev.evaluate(n=2, z=0.4 + 0.4j)
    u.assert_warning(message='The Laurent series of E_2 did not reach the tolerance 1e-14 within 4 terms', caplog=caplog)
