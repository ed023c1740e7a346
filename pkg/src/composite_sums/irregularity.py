"""
Irregularity Measure
~~~~~~~~~~~~~~~~~~~~
|Functionality| for measuring how irregular a disk configuration is from its structural sums e_(3,3) and e_(8,8), and for fitting
the logarithmic curves y = a log(b x + 1) used to summarize accuracy and conductivity trends.
"""
from __future__ import annotations
import logging as log
import math
import typing as t
import numpy as np
import scipy.optimize as so
from . import configuration as c
from . import lattice as la
from . import sums as s

E_3_3 = s.MultiOrder(p=(3, 3))
E_8_8 = s.MultiOrder(p=(8, 8))
IMAGINARY_PART_WARNING = 1e-6
_B_GRID = np.logspace(-6, 3, 200)


class IrregularityError(ValueError):
    """Raised when the argument of the logarithm of the irregularity measure is not positive."""
    def __init__(self, message: str, e33: float, e88: float) -> None:
        super(IrregularityError, self).__init__(message)
        self.e33 = e33
        self.e88 = e88


class FitError(RuntimeError):
    """Raised when the logarithmic curve fit does not converge. ``residual`` is the root sum of squares reached."""
    def __init__(self, message: str, residual: float) -> None:
        super(FitError, self).__init__(message)
        self.residual = residual


def irregularity_sums(
        config: c.DiskConfiguration, ev: la.EisensteinEvaluator, cache: s.SumCache | None = None) -> tuple[complex, complex]:
    """The structural sums e_(3,3) and e_(8,8) of a configuration."""
    evaluator = s.StructuralSumEvaluator(config=config, ev=ev, cache=cache)
    return evaluator.evaluate(order=E_3_3), evaluator.evaluate(order=E_8_8)


def irregularity_from_sums(e33: float, e88: float) -> float:
    """ The irregularity measure log((1 - e33)(1 + e88)).

    :param e33: The real part of e_(3,3).
    :param e88: The real part of e_(8,8).
    :return: The measure.
    :raises IrregularityError: Raised if (1 - e33)(1 + e88) is not positive.
    """
    argument = (1 - e33) * (1 + e88)
    if not argument > 0:
        raise IrregularityError(
            f'The irregularity measure is undefined: (1 - e_3_3)(1 + e_8_8) = (1 - {e33})(1 + {e88}) is not positive',
            e33=e33, e88=e88)
    return math.log(argument)


def irregularity(config: c.DiskConfiguration, ev: la.EisensteinEvaluator, cache: s.SumCache | None = None) -> float:
    """ The irregularity measure mu = log((1 - e_(3,3))(1 + e_(8,8))) of a configuration on the real parts of the two sums. It is
    0 for the hexagonal array. Imaginary parts above 1e-6 are logged as a warning.

    :param config: The disk configuration.
    :param ev: The Eisenstein evaluator of the configuration's lattice.
    :param cache: The cache of intermediate structural-sum results.
    :return: mu.
    :raises IrregularityError: Raised if the argument of the logarithm is not positive.
    """
    e33, e88 = irregularity_sums(config=config, ev=ev, cache=cache)
    for order, value in ((E_3_3, e33), (E_8_8, e88)):
        if abs(value.imag) > IMAGINARY_PART_WARNING * max(1.0, abs(value.real)):
            log.warning(f'{order.name} has an imaginary part of {value.imag}; the irregularity measure uses its real part')
    return irregularity_from_sums(e33=e33.real, e88=e88.real)


def class_mean_irregularity(values: t.Sequence[float], labels: t.Sequence[str]) -> dict[str, float]:
    """ The mean irregularity of every class.

    :param values: The irregularity of every sample.
    :param labels: The class of every sample.
    :return: The class means keyed by class in sorted order.
    """
    if len(values) != len(labels):
        raise ValueError(f'Got {len(values)} values but {len(labels)} labels')
    grouped = dict[str, list[float]]()
    for value, label in zip(values, labels):
        grouped.setdefault(label, []).append(value)
    return {label: math.fsum(grouped[label]) / len(grouped[label]) for label in sorted(grouped)}


def _as_points(points: t.Sequence[tuple[float, float]] | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != 2:
        raise ValueError('The points must be (x, y) pairs')
    return points[:, 0], points[:, 1]


def log_curve_residual(points: t.Sequence[tuple[float, float]] | np.ndarray, a: float, b: float) -> float:
    """The root sum of squares of y - a log(b x + 1) over the points."""
    x, y = _as_points(points=points)
    return float(np.sqrt(np.sum((y - a * np.log1p(b * x)) ** 2)))


def fit_log_curve(points: t.Sequence[tuple[float, float]] | np.ndarray) -> tuple[float, float]:
    """ Fits y = a log(b x + 1), a curve through the origin, by least squares. A grid over b, with the optimal a of every b in closed
    form, seeds a trust-region least-squares refinement of (a, b) that keeps b positive.

    :param points: At least 3 (x, y) pairs with x >= 0.
    :return: The parameters (a, b).
    :raises ValueError: Raised for fewer than 3 points or negative x.
    :raises FitError: Raised if the refinement does not converge.
    """
    x, y = _as_points(points=points)
    if x.size < 3:
        raise ValueError(f'Fitting the logarithmic curve needs at least 3 points, got {x.size}')
    if np.any(x < 0) or not np.all(np.isfinite(x)) or not np.all(np.isfinite(y)):
        raise ValueError('The logarithmic curve is fitted to finite points with x >= 0')
    best_a, best_b, best_residual = 0.0, 1.0, math.inf
    for b in _B_GRID:
        basis = np.log1p(b * x)
        norm = float(basis @ basis)
        a = float(basis @ y) / norm if norm > 0 else 0.0
        residual = float(np.sum((y - a * basis) ** 2))
        if residual < best_residual:
            best_a, best_b, best_residual = a, float(b), residual
    if best_residual == 0:
        return best_a, best_b

    def residuals(parameters: np.ndarray) -> np.ndarray:
        return parameters[0] * np.log1p(parameters[1] * x) - y

    result = so.least_squares(
        residuals, x0=np.array([best_a, best_b]), bounds=([-np.inf, 1e-12], [np.inf, np.inf]), method='trf', x_scale='jac',
        ftol=1e-15, xtol=1e-15, gtol=1e-15, max_nfev=10_000)
    a, b = (float(value) for value in result.x)
    residual = log_curve_residual(points=np.column_stack([x, y]), a=a, b=b)
    if result.status <= 0 or not math.isfinite(residual):
        raise FitError(f'The logarithmic curve fit did not converge ({result.message}); residual {residual}', residual=residual)
    if residual > math.sqrt(best_residual):
        return best_a, best_b
    return a, b
