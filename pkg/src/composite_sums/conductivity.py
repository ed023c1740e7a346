"""
Effective Conductivity
~~~~~~~~~~~~~~~~~~~~~~
|Functionality| for building the coefficients B_q of the effective-conductivity series symbolically and evaluating
lambda = 1 + 2 rho nu sum_q B_q nu^q on a disk configuration.
"""
from __future__ import annotations
import fractions as fr
import functools as ft
import logging as log
import math
import typing as t
from . import configuration as c
from . import lattice as la
from . import sums as s

DEFAULT_Q_MAX = 6
IMAGINARY_RESIDUAL_WARNING = 1e-6

Coefficient = dict[int, fr.Fraction]


class SymbolicBq:
    """
    The coefficient B_q as pi^(-q) times a linear combination of structural sums, each weighted by a polynomial in the contrast rho
    with exact rational coefficients.

    :ivar int q: The order of the coefficient.
    :ivar dict terms: Maps every multi-order to its rho-polynomial, itself a map from rho power to rational coefficient.
    """
    def __init__(self, q: int, terms: dict[s.MultiOrder, Coefficient]) -> None:
        self.q = q
        self.terms = {
            order: {power: coefficient for power, coefficient in sorted(polynomial.items()) if coefficient != 0}
            for order, polynomial in sorted(terms.items())}
        self.terms = {order: polynomial for order, polynomial in self.terms.items() if polynomial}

    @property
    def pi_power(self) -> int:
        return -self.q

    @property
    def orders(self) -> list[s.MultiOrder]:
        return list(self.terms)

    def evaluate(self, values: t.Mapping[s.MultiOrder, complex], rho: float) -> complex:
        """ Substitutes structural-sum values and the contrast into B_q.

        :param values: The value of every multi-order of B_q.
        :param rho: The contrast parameter.
        :return: The value of B_q.
        """
        total = 0j
        for order, polynomial in self.terms.items():
            weight = sum(float(coefficient) * rho ** power for power, coefficient in polynomial.items())
            total += weight * complex(values[order])
        return total * math.pi ** self.pi_power

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SymbolicBq) and self.q == other.q and self.terms == other.terms

    def __str__(self) -> str:
        """ A human-readable form such as "pi^-3 * (rho^3 * e_2_2_2 - 2 rho^2 * e_3_3)"."""
        if self.q == 0:
            return '1'
        parts = list[str]()
        for order, polynomial in self.terms.items():
            for power, coefficient in polynomial.items():
                magnitude = abs(coefficient)
                rho = '' if power == 0 else ('rho' if power == 1 else f'rho^{power}')
                factor = '' if magnitude == 1 and rho else str(magnitude)
                weight = ' '.join(piece for piece in (factor, rho) if piece)
                sign = '-' if coefficient < 0 else '+'
                parts.append(f'{sign} {weight} * {order.name}')
        body = ' '.join(parts)
        body = body[2:] if body.startswith('+ ') else '-' + body[2:]
        return f'pi^{self.pi_power} * ({body})'


def _substitute(order: s.MultiOrder) -> list[tuple[s.MultiOrder, int, fr.Fraction]]:
    """The substitution rule e_(p1, p2, ...) -> rho e_(2, p1, p2, ...) - p2 / (p1 - 1) e_(p1 + 1, p2 + 1, ...) as (order, rho power, coefficient)."""
    p = order.p
    substituted = [(s.MultiOrder(p=(2,) + p), 1, fr.Fraction(1))]
    if len(p) > 1:
        substituted.append((s.MultiOrder(p=(p[0] + 1, p[1] + 1) + p[2:]), 0, -fr.Fraction(p[1], p[0] - 1)))
    return substituted


@ft.lru_cache(maxsize=None)
def _build_terms(q: int) -> tuple[tuple[s.MultiOrder, tuple[tuple[int, fr.Fraction], ...]], ...]:
    if q == 0:
        terms = {s.UNIT_ORDER: {0: fr.Fraction(1)}}
    elif q == 1:
        terms = {s.MultiOrder(p=(2,)): {1: fr.Fraction(1)}}
    elif q == 2:
        terms = {s.MultiOrder(p=(2, 2)): {2: fr.Fraction(1)}}
    else:
        terms = dict[s.MultiOrder, Coefficient]()
        for order, polynomial in _build_terms(q=q - 1):
            for new_order, rho_power, factor in _substitute(order=order):
                collected = terms.setdefault(new_order, {})
                for power, coefficient in polynomial:
                    collected[power + rho_power] = collected.get(power + rho_power, fr.Fraction(0)) + factor * coefficient
    return tuple((order, tuple(sorted(polynomial.items()))) for order, polynomial in sorted(terms.items()))


def build_Bq(q: int) -> SymbolicBq:
    """ Builds B_q by the recurrence B_0 = 1, B_1 = pi^-1 rho e_2, B_2 = pi^-2 rho^2 e_(2,2) and B_q = pi^-1 beta B_(q-1), where beta
    rewrites every structural sum by the substitution rule and collects like multi-orders.

    :param q: The order, at least 0.
    :return: The symbolic coefficient.
    :raises ValueError: Raised if q is negative.
    """
    if q < 0:
        raise ValueError(f'The order of B_q must be non-negative, got {q}')
    return SymbolicBq(q=q, terms={order: dict(polynomial) for order, polynomial in _build_terms(q=q)})


def conductivity_orders(q: int) -> list[s.MultiOrder]:
    """The multi-orders appearing in B_1 through B_q."""
    orders = set[s.MultiOrder]()
    for order_q in range(1, q + 1):
        orders.update(build_Bq(q=order_q).orders)
    return sorted(orders, key=s.MultiOrder.feature_key)


def contrast(lambda_f: float) -> float:
    """ The contrast parameter rho = (lambda_f - 1) / (lambda_f + 1).

    :param lambda_f: The conductivity of the inclusions relative to the matrix.
    :return: rho.
    :raises ValueError: Raised if lambda_f is not positive.
    """
    if not lambda_f > 0 or math.isinf(lambda_f):
        raise ValueError(f'The inclusion conductivity must be positive and finite, got {lambda_f}')
    return (lambda_f - 1) / (lambda_f + 1)


class SeriesTerm(t.NamedTuple):
    q: int
    b_q: complex
    partial_sum: float


def series_partial_sums(
        config: c.DiskConfiguration, lambda_f: float, ev: la.EisensteinEvaluator, q_max: int = DEFAULT_Q_MAX,
        cache: s.SumCache | None = None) -> list[SeriesTerm]:
    """ Evaluates B_0 through B_q_max on a configuration and the conductivity series truncated after every order.

    :param config: The disk configuration.
    :param lambda_f: The conductivity of the inclusions relative to the matrix.
    :param ev: The Eisenstein evaluator of the configuration's lattice.
    :param q_max: The highest order of the series.
    :param cache: The cache of intermediate structural-sum results.
    :return: For every q, B_q and the real part of 1 + 2 rho nu sum_(j <= q) B_j nu^j.
    :raises ValueError: Raised if lambda_f is not positive or q_max is negative.
    """
    rho = contrast(lambda_f=lambda_f)
    if q_max < 0:
        raise ValueError(f'q_max must be non-negative, got {q_max}')
    nu = config.concentration
    evaluator = s.StructuralSumEvaluator(config=config, ev=ev, cache=cache, use_mirrors=True)
    terms = list[SeriesTerm]()
    series = 0j
    for q in range(q_max + 1):
        b_q = build_Bq(q=q)
        value = b_q.evaluate(values=evaluator.evaluate_many(orders=b_q.orders), rho=rho)
        series += value * nu ** q
        terms.append(SeriesTerm(q=q, b_q=value, partial_sum=1 + 2 * rho * nu * series.real))
    residual = abs(2 * rho * nu * series.imag)
    if residual > IMAGINARY_RESIDUAL_WARNING * max(1.0, abs(terms[-1].partial_sum)):
        log.warning(f'The conductivity series has an imaginary residual of {residual}, which is above {IMAGINARY_RESIDUAL_WARNING}')
    return terms


def effective_conductivity(
        config: c.DiskConfiguration, lambda_f: float, ev: la.EisensteinEvaluator, q_max: int = DEFAULT_Q_MAX,
        cache: s.SumCache | None = None) -> float:
    """ The effective conductivity lambda = 1 + 2 rho nu sum_(q <= q_max) B_q nu^q of a macroscopically isotropic composite, using
    the real part of the series. An imaginary residual above 1e-6 is logged as a warning.

    :param config: The disk configuration.
    :param lambda_f: The conductivity of the inclusions relative to the matrix.
    :param ev: The Eisenstein evaluator of the configuration's lattice.
    :param q_max: The highest order of the series.
    :param cache: The cache of intermediate structural-sum results.
    :return: lambda.
    :raises ValueError: Raised if lambda_f is not positive or q_max is negative.
    """
    return series_partial_sums(config=config, lambda_f=lambda_f, ev=ev, q_max=q_max, cache=cache)[-1].partial_sum
