"""
Lattices, Lattice Sums and Eisenstein Functions
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
|Functionality| for representing the doubly periodic cell of a composite, computing its lattice sums S_n and evaluating the
Eisenstein functions E_n (together with the Weierstrass function they are built from).
"""
from __future__ import annotations
import cmath
import math
import logging as log
import threading as th
import numpy as np
import numpy.polynomial as npo
import numpy.polynomial.polynomial as npp
import scipy.special as ss

DEFAULT_N_MAX = 128
_Q_SERIES_RELATIVE_STOP = 1e-16
_Q_SERIES_MAX_TERMS = 10_000


class InvalidLatticeError(ValueError):
    """Raised when two periods do not span a lattice, i.e. Im(omega2 / omega1) is not positive or the nome is not inside the unit disk."""


class Lattice:
    """
    The periods of the doubly periodic cell along with the table of lattice sums S_n, n = 2..n_max.
    Instances are immutable and safe to share between threads.

    :ivar complex omega1: The first period.
    :ivar complex omega2: The second period.
    :ivar complex tau: The period ratio omega2 / omega1.
    :ivar complex nome_q: exp(pi i tau).
    :ivar int n_max: The largest index held in ``sum_table``.
    """
    PRESETS = ('square', 'hexagonal')

    def __init__(self, omega1: complex, omega2: complex, n_max: int = DEFAULT_N_MAX) -> None:
        """
        :param omega1: The first period.
        :param omega2: The second period.
        :param n_max: The largest index of the precomputed lattice sums.
        :raises InvalidLatticeError: Raised if Im(omega2 / omega1) <= 0.
        """
        omega1 = complex(omega1)
        omega2 = complex(omega2)
        if omega1 == 0 or omega2 == 0:
            raise InvalidLatticeError(f'Periods must be non-zero, got omega1={omega1} and omega2={omega2}')
        tau = omega2 / omega1
        if not tau.imag > 0:
            raise InvalidLatticeError(
                f'The periods omega1={omega1} and omega2={omega2} give tau={tau}. The imaginary part of tau must be positive')
        nome_q = cmath.exp(1j * math.pi * tau)
        if abs(nome_q) >= 1:
            raise InvalidLatticeError(f'The nome q={nome_q} does not lie inside the unit disk')
        if n_max < 2:
            raise ValueError(f'n_max must be at least 2, got {n_max}')
        self._omega1 = omega1
        self._omega2 = omega2
        self._tau = tau
        self._nome_q = nome_q
        self._n_max = n_max
        self._inverse_basis = np.linalg.inv(np.array([[omega1.real, omega2.real], [omega1.imag, omega2.imag]]))
        sum_table = _even_lattice_sums(omega1=omega1, nome_q=nome_q, n_max=n_max)
        sum_table.setflags(write=False)
        self._sum_table = sum_table

    @staticmethod
    def square(n_max: int = DEFAULT_N_MAX) -> Lattice:
        """The unit square cell, omega1 = 1 and omega2 = i."""
        return Lattice(omega1=1.0, omega2=1j, n_max=n_max)

    @staticmethod
    def hexagonal(n_max: int = DEFAULT_N_MAX) -> Lattice:
        """The unit area hexagonal cell, tau = exp(i pi / 3)."""
        omega1 = math.sqrt(2 / math.sqrt(3))
        return Lattice(omega1=omega1, omega2=omega1 * cmath.exp(1j * math.pi / 3), n_max=n_max)

    @staticmethod
    def from_preset(name: str, n_max: int = DEFAULT_N_MAX) -> Lattice:
        if name == 'square':
            return Lattice.square(n_max=n_max)
        elif name == 'hexagonal':
            return Lattice.hexagonal(n_max=n_max)
        raise ValueError(f'Unknown lattice preset "{name}". Valid values are: {", ".join(Lattice.PRESETS)}')

    @staticmethod
    def from_json(lattice_json: str | dict, n_max: int = DEFAULT_N_MAX) -> Lattice:
        """ Creates a lattice from either a preset name or a mapping of the form {"omega1": [x, y], "omega2": [x, y]}.

        :param lattice_json: The JSON form of the lattice.
        :param n_max: The largest index of the precomputed lattice sums.
        :return: The lattice.
        """
        if isinstance(lattice_json, str):
            return Lattice.from_preset(name=lattice_json, n_max=n_max)
        [x1, y1] = lattice_json['omega1']
        [x2, y2] = lattice_json['omega2']
        return Lattice(omega1=complex(x1, y1), omega2=complex(x2, y2), n_max=n_max)

    @staticmethod
    def from_string(lattice_string: str) -> Lattice:
        """ Parses either a preset name or four comma separated reals "x1,y1,x2,y2"."""
        if lattice_string in Lattice.PRESETS:
            return Lattice.from_preset(name=lattice_string)
        parts = lattice_string.split(',')
        if len(parts) != 4:
            raise ValueError(
                f'Lattice must be one of {", ".join(Lattice.PRESETS)} or four comma separated reals, got "{lattice_string}"')
        x1, y1, x2, y2 = (float(part) for part in parts)
        return Lattice(omega1=complex(x1, y1), omega2=complex(x2, y2))

    def to_json(self) -> str | dict:
        for name in Lattice.PRESETS:
            if self == Lattice.from_preset(name=name, n_max=2):
                return name
        return {'omega1': [self._omega1.real, self._omega1.imag], 'omega2': [self._omega2.real, self._omega2.imag]}

    @property
    def omega1(self) -> complex:
        return self._omega1

    @property
    def omega2(self) -> complex:
        return self._omega2

    @property
    def tau(self) -> complex:
        return self._tau

    @property
    def nome_q(self) -> complex:
        return self._nome_q

    @property
    def n_max(self) -> int:
        return self._n_max

    @property
    def sum_table(self) -> np.ndarray:
        """Read-only array indexed by n holding S_n for 2 <= n <= n_max (entries 0, 1 and every odd index are exactly 0)."""
        return self._sum_table

    @property
    def area(self) -> float:
        return abs((self._omega1.conjugate() * self._omega2).imag)

    @property
    def shortest_period(self) -> float:
        """The length of the shortest non-zero lattice vector among the periods and their sum and difference."""
        return min(abs(self._omega1), abs(self._omega2), abs(self._omega1 + self._omega2), abs(self._omega1 - self._omega2))

    def lattice_coordinates(self, z: np.ndarray | complex) -> tuple[np.ndarray, np.ndarray]:
        """ Solves z = t1 omega1 + t2 omega2 for the real coordinates (t1, t2).

        :param z: One or more complex numbers.
        :return: The arrays t1 and t2.
        """
        z = np.asarray(z, dtype=complex)
        t1 = self._inverse_basis[0, 0] * z.real + self._inverse_basis[0, 1] * z.imag
        t2 = self._inverse_basis[1, 0] * z.real + self._inverse_basis[1, 1] * z.imag
        return t1, t2

    def from_lattice_coordinates(self, t1: np.ndarray | float, t2: np.ndarray | float) -> np.ndarray:
        return np.asarray(t1) * self._omega1 + np.asarray(t2) * self._omega2

    def reduce(self, z: np.ndarray | complex) -> np.ndarray:
        """ Reduces z modulo the lattice into the fundamental cell centered at 0 by rounding the lattice coordinates to the nearest integers.

        :param z: One or more complex numbers.
        :return: The reduced numbers, with lattice coordinates in [-1/2, 1/2].
        """
        t1, t2 = self.lattice_coordinates(z=z)
        return self.from_lattice_coordinates(t1=t1 - np.rint(t1), t2=t2 - np.rint(t2))

    def contains(self, z: np.ndarray | complex, slack: float = 1e-12) -> np.ndarray:
        """Whether z lies in the fundamental cell centered at 0."""
        t1, t2 = self.lattice_coordinates(z=z)
        return (np.abs(t1) <= 0.5 + slack) & (np.abs(t2) <= 0.5 + slack)

    def lattice_points(self, shell: int, include_origin: bool = False) -> np.ndarray:
        """The lattice points m1 omega1 + m2 omega2 with |m1|, |m2| <= shell."""
        points = [
            m1 * self._omega1 + m2 * self._omega2 for m1 in range(-shell, shell + 1) for m2 in range(-shell, shell + 1)
            if include_origin or (m1, m2) != (0, 0)]
        return np.array(points, dtype=complex)

    def periodic_distance(self, z: np.ndarray | complex, shell: int = 1) -> np.ndarray:
        """ The distance from z to the nearest point of the lattice, i.e. the length of z under the periodic metric.

        :param z: One or more complex numbers.
        :param shell: How many rings of translates of the reduced z to compare.
        :return: The periodic lengths.
        """
        reduced = self.reduce(z=z)
        translates = self.lattice_points(shell=shell, include_origin=True)
        return np.abs(reduced[..., np.newaxis] - translates).min(axis=-1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Lattice) and self._omega1 == other._omega1 and self._omega2 == other._omega2

    def __hash__(self) -> int:
        return hash((self._omega1, self._omega2))

    def __repr__(self) -> str:
        return f'Lattice(omega1={self._omega1!r}, omega2={self._omega2!r})'


def _q_series(nome_q: complex, power: int) -> complex:
    """ Sums m^power q^(2m) / (1 - q^(2m)) over m >= 1, stopping once a term is negligible against the partial sum."""
    q2 = nome_q * nome_q
    partial_sum = 0j
    q2m = 1 + 0j
    for m in range(1, _Q_SERIES_MAX_TERMS + 1):
        q2m *= q2
        term = m ** power * q2m / (1 - q2m)
        partial_sum += term
        if abs(term) < _Q_SERIES_RELATIVE_STOP * abs(partial_sum) or q2m == 0:
            return partial_sum
    log.warning(f'The q-series for q={nome_q} did not converge in {_Q_SERIES_MAX_TERMS} terms')
    return partial_sum


def _even_lattice_sums(omega1: complex, nome_q: complex, n_max: int) -> np.ndarray:
    sums = np.zeros(n_max + 1, dtype=complex)
    scale = math.pi / omega1
    sums[2] = scale ** 2 * (1 / 3 - 8 * _q_series(nome_q=nome_q, power=1))
    if n_max >= 4:
        sums[4] = scale ** 4 / 60 * (4 / 3 + 320 * _q_series(nome_q=nome_q, power=3))
    if n_max >= 6:
        sums[6] = scale ** 6 / 140 * (8 / 27 - 448 / 3 * _q_series(nome_q=nome_q, power=5))
    for half in range(4, n_max // 2 + 1):
        total = sum((2 * m - 1) * (2 * half - 2 * m - 1) * sums[2 * m] * sums[2 * half - 2 * m] for m in range(2, half - 1))
        sums[2 * half] = 3 * total / ((2 * half + 1) * (2 * half - 1) * (half - 3))
    return sums


def lattice_sum_S2(lattice: Lattice) -> complex:
    """ Computes S_2 under Eisenstein summation from the rapidly convergent q-series.

    :param lattice: The lattice.
    :return: S_2.
    """
    return complex(lattice.sum_table[2])


def lattice_sum_Sn(lattice: Lattice, n: int) -> complex:
    """ Computes S_n for n >= 3. Odd indices give exactly 0, n = 4 and 6 come from q-series and larger even indices from the
    recurrence over the smaller even sums.

    :param lattice: The lattice.
    :param n: The index of the sum.
    :return: S_n.
    :raises ValueError: Raised if n < 3.
    """
    if n < 3:
        raise ValueError(f'lattice_sum_Sn requires n >= 3, got {n}. Use lattice_sum_S2 for n = 2')
    if n % 2 == 1:
        return 0j
    if n <= lattice.n_max:
        return complex(lattice.sum_table[n])
    return complex(_even_lattice_sums(omega1=lattice.omega1, nome_q=lattice.nome_q, n_max=n)[n])


class EisensteinEvaluator:
    """
    Evaluates the Eisenstein functions E_n of a lattice. Arguments are first reduced into the fundamental cell centered at 0. The
    lattice points within ``shell`` rings of the origin are then summed exactly and the remaining lattice is handled by its Laurent
    expansion around 0, whose coefficients are the lattice sums with the shell removed. With ``shell=0`` this is the plain expansion
    E_n(z) = z^-n + (-1)^n sum_j C(n+j-1, j) S_(n+j) z^j.
    """
    def __init__(self, lattice: Lattice, series_order: int = 64, tolerance: float = 1e-10, shell: int = 1) -> None:
        """
        :param lattice: The lattice whose Eisenstein functions are evaluated.
        :param series_order: The number of terms of the Laurent expansion.
        :param tolerance: The relative size of the last retained term above which a warning is logged.
        :param shell: The number of rings of lattice points summed exactly.
        """
        if series_order < 2:
            raise ValueError(f'series_order must be at least 2, got {series_order}')
        if not tolerance > 0:
            raise ValueError(f'tolerance must be positive, got {tolerance}')
        if shell < 0:
            raise ValueError(f'shell must be non-negative, got {shell}')
        self._lattice = lattice
        self._series_order = series_order
        self._tolerance = tolerance
        self._shell = shell
        self._shell_points = lattice.lattice_points(shell=shell)
        self._coefficients = dict[int, np.ndarray]()
        self._warned = set[int]()
        self._lock = th.Lock()

    @property
    def lattice(self) -> Lattice:
        return self._lattice

    @property
    def series_order(self) -> int:
        return self._series_order

    @property
    def tolerance(self) -> float:
        return self._tolerance

    @property
    def shell(self) -> int:
        return self._shell

    def lattice_sum(self, n: int) -> complex:
        return lattice_sum_S2(lattice=self._lattice) if n == 2 else lattice_sum_Sn(lattice=self._lattice, n=n)

    def _get_coefficients(self, n: int) -> np.ndarray:
        with self._lock:
            coefficients = self._coefficients.get(n)
            if coefficients is None:
                coefficients = self._laurent_coefficients(n=n)
                self._coefficients[n] = coefficients
            return coefficients

    def _laurent_coefficients(self, n: int) -> np.ndarray:
        largest_index = n + self._series_order - 1
        if largest_index > self._lattice.n_max:
            raise ValueError(
                f'E_{n} with series_order={self._series_order} needs lattice sums up to S_{largest_index} but the lattice only holds '
                f'them up to n_max={self._lattice.n_max}')
        coefficients = np.zeros(self._series_order, dtype=complex)
        sign = -1 if n % 2 else 1
        for j in range(self._series_order):
            k = n + j
            if k % 2 == 1:
                continue
            far_sum = self._lattice.sum_table[k]
            if self._shell_points.size:
                far_sum = far_sum - (self._shell_points ** -k).sum()
            coefficients[j] = sign * ss.comb(n + j - 1, j, exact=True) * far_sum
        coefficients.setflags(write=False)
        return coefficients

    def evaluate(self, n: int, z: np.ndarray | complex) -> np.ndarray | complex:
        """ Evaluates E_n at one or more points.

        :param n: The index of the Eisenstein function, at least 2.
        :param z: The point(s) of evaluation; any complex numbers.
        :return: E_n(z), with E_n(0) := S_n. A complex scalar if z is a scalar, else an array of the same shape as z.
        :raises ValueError: Raised if n < 2.
        """
        if n < 2:
            raise ValueError(f'Eisenstein functions are defined for n >= 2, got n={n}')
        z_array = np.asarray(z, dtype=complex)
        w = np.atleast_1d(self._lattice.reduce(z=z_array))
        at_origin = w == 0
        # Placeholder for z on the lattice; a non-lattice point away from every shell point
        w_safe = np.where(at_origin, (self._lattice.omega1 + self._lattice.omega2) / 6, w)
        coefficients = self._get_coefficients(n=n)
        values = w_safe ** -n + npp.polyval(w_safe, coefficients)
        if self._shell_points.size:
            values = values + ((w_safe[..., np.newaxis] - self._shell_points) ** -n).sum(axis=-1)
        self._check_convergence(n=n, w=w_safe[~at_origin], values=values[~at_origin], coefficients=coefficients)
        values = np.where(at_origin, self.lattice_sum(n=n), values)
        if z_array.ndim == 0:
            return complex(values[0])
        return values.reshape(z_array.shape)

    def _check_convergence(self, n: int, w: np.ndarray, values: np.ndarray, coefficients: np.ndarray) -> None:
        if n in self._warned or w.size == 0:
            return
        last = coefficients[-2:]
        tail = np.abs(last[-1]) * np.abs(w) ** (self._series_order - 1) + np.abs(last[0]) * np.abs(w) ** (self._series_order - 2)
        if np.any(tail > self._tolerance * np.maximum(np.abs(values), 1.0)):
            self._warned.add(n)
            log.warning(f'The Laurent series of E_{n} did not reach the tolerance {self._tolerance} within {self._series_order} terms')

    def wp(self, z: np.ndarray | complex) -> np.ndarray | complex:
        """The Weierstrass function, E_2(z) - S_2."""
        return self.evaluate(n=2, z=z) - self.lattice_sum(n=2)

    def wp_second_derivative(self, z: np.ndarray | complex) -> np.ndarray | complex:
        """The second derivative of the Weierstrass function, 6 E_4(z)."""
        return 6 * self.evaluate(n=4, z=z)


def eisenstein_eval(ev: EisensteinEvaluator, n: int, z: np.ndarray | complex) -> np.ndarray | complex:
    """ Evaluates E_n(z) with the given evaluator. See ``EisensteinEvaluator.evaluate``."""
    return ev.evaluate(n=n, z=z)


def _cot_derivative_polynomials(order: int) -> list[npo.Polynomial]:
    """ Polynomials P_k with d^k/du^k cot(u) = P_k(cot(u)), from P_0 = c and P_(k+1) = -(1 + c^2) P_k'."""
    one_plus_c2 = npo.Polynomial([1, 0, 1])
    polynomials = [npo.Polynomial([0, 1])]
    for _ in range(order):
        polynomials.append(-(one_plus_c2 * polynomials[-1].deriv()))
    return polynomials


def _row_sum(n: int, y: np.ndarray, n_terms: int = 60) -> np.ndarray:
    """ Sums (y + m)^-n over all integers m for Im(y) != 0 via the exponentially convergent Lipschitz series."""
    upper = y.imag > 0
    y_upper = np.where(upper, y, -y)
    k = np.arange(1, n_terms + 1, dtype=float)
    series = (k ** (n - 1) * np.exp(2j * np.pi * np.multiply.outer(y_upper, k))).sum(axis=-1)
    values = (-2j * np.pi) ** n / math.factorial(n - 1) * series
    return np.where(upper, values, (-1) ** n * values)


def _central_row_sum(n: int, y: np.ndarray) -> np.ndarray:
    """ Sums (y + m)^-n over all integers m through derivatives of pi cot(pi y); suited to rows with small |Im(y)|."""
    polynomial = _cot_derivative_polynomials(order=n - 1)[n - 1]
    cotangent = 1 / np.tan(np.pi * y)
    return (-1) ** (n - 1) / math.factorial(n - 1) * np.pi ** n * polynomial(cotangent)


def _lattice_sum_by_rows(lattice: Lattice, n: int, n_rows: int) -> complex:
    total = 2 * complex(ss.zeta(n, 1)) if n % 2 == 0 else 0j
    for m2 in range(1, n_rows + 1):
        y = np.array([m2 * lattice.tau, -m2 * lattice.tau])
        row = _row_sum(n=n, y=y).sum()
        total += row
        if abs(row) < 1e-18 * abs(total):
            break
    return total * lattice.omega1 ** -n


def lattice_sum_direct(lattice: Lattice, n: int, m_max: int = 300) -> complex:
    """ Reference value of S_n by truncated direct summation. For n >= 3 the points with |m1|, |m2| <= m_max are summed; S_2 is only
    conditionally convergent and is summed in Eisenstein order, each row m2 = const being summed in closed form.

    :param lattice: The lattice.
    :param n: The index of the sum, at least 2.
    :param m_max: The truncation of the lattice indices (also the number of rows used for S_2).
    :return: The truncated sum.
    """
    if n < 2:
        raise ValueError(f'Lattice sums are defined for n >= 2, got n={n}')
    if n == 2:
        return _lattice_sum_by_rows(lattice=lattice, n=2, n_rows=m_max)
    m = np.arange(-m_max, m_max + 1)
    m1, m2 = np.meshgrid(m, m, indexing='ij')
    points = (m1 * lattice.omega1 + m2 * lattice.omega2).ravel()
    points = points[points != 0]
    terms = points ** -n
    # Smallest terms first
    terms = terms[np.argsort(np.abs(terms))]
    return complex(terms.sum())


def eisenstein_by_rows(lattice: Lattice, n: int, z: np.ndarray | complex, n_rows: int = 20) -> np.ndarray | complex:
    """ Reference value of E_n(z) by Eisenstein-ordered summation: every row of lattice points m2 = const is summed in closed form
    and the rows, which decay exponentially in m2, are added for |m2| <= n_rows.

    :param lattice: The lattice.
    :param n: The index of the Eisenstein function, at least 2.
    :param z: The point(s) of evaluation.
    :param n_rows: The number of rows on each side of the central one.
    :return: E_n(z), with E_n(0) := S_n.
    """
    if n < 2:
        raise ValueError(f'Eisenstein functions are defined for n >= 2, got n={n}')
    z_array = np.asarray(z, dtype=complex)
    w = np.atleast_1d(lattice.reduce(z=z_array))
    at_origin = w == 0
    x = np.where(at_origin, 0.5, w / lattice.omega1)
    total = _central_row_sum(n=n, y=x)
    for m2 in range(1, n_rows + 1):
        total = total + _row_sum(n=n, y=x - m2 * lattice.tau) + _row_sum(n=n, y=x + m2 * lattice.tau)
    values = total * lattice.omega1 ** -n
    values = np.where(at_origin, _lattice_sum_by_rows(lattice=lattice, n=n, n_rows=n_rows), values)
    if z_array.ndim == 0:
        return complex(values[0])
    return values.reshape(z_array.shape)
