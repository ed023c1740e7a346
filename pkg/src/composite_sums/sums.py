"""
Structural Sums
~~~~~~~~~~~~~~~
|Functionality| for enumerating multi-orders, evaluating the structural sums of a disk configuration and relating mirror sums.
"""
from __future__ import annotations
import fractions as fr
import functools as ft
import math
import threading as th
import typing as t
import numpy as np
from . import configuration as c
from . import lattice as la

DEFAULT_ORACLE_MAX_DISKS = 30
DEFAULT_ORACLE_MAX_LENGTH = 5
_ORACLE_BLOCK = 1 << 20


class OracleCapError(ValueError):
    """Raised when the brute-force evaluator is asked for more terms than its caps allow."""


@ft.total_ordering
class MultiOrder:
    """
    The multi-order p = (p_1, ..., p_n) of a structural sum, each p_j >= 2, along with its exponents t_0 = 1, t_j = p_j - t_(j-1).
    Valid multi-orders have t_n = 1. The empty multi-order stands for the constant 1. Multi-orders compare lexicographically.
    """
    __slots__ = ('_p', '_t')

    def __init__(self, p: t.Iterable[int]) -> None:
        """
        :param p: The integers p_1, ..., p_n.
        :raises ValueError: Raised if some p_j < 2 or t_n != 1.
        """
        p = tuple(int(p_j) for p_j in p)
        if any(p_j < 2 for p_j in p):
            raise ValueError(f'Every entry of a multi-order must be at least 2, got {p}')
        exponents = [1]
        for p_j in p:
            exponents.append(p_j - exponents[-1])
        if exponents[-1] != 1:
            raise ValueError(f'The multi-order {p} has t_n = {exponents[-1]} but t_n must equal 1')
        self._p = p
        self._t = tuple(exponents)

    @staticmethod
    def parse(name: str) -> MultiOrder:
        """ Parses names such as "e_2_3_3" (the empty multi-order is "e")."""
        parts = name.strip().split('_')
        if parts[0] != 'e':
            raise ValueError(f'Multi-order names start with "e", got "{name}"')
        try:
            return MultiOrder(p=(int(part) for part in parts[1:]))
        except ValueError as e:
            raise ValueError(f'Invalid multi-order name "{name}": {e}') from e

    @property
    def p(self) -> tuple[int, ...]:
        return self._p

    @property
    def t(self) -> tuple[int, ...]:
        return self._t

    @property
    def n(self) -> int:
        return len(self._p)

    @property
    def alpha(self) -> int:
        return sum(self._p)

    @property
    def delta(self) -> fr.Fraction:
        return fr.Fraction(self.alpha, 2)

    @property
    def name(self) -> str:
        return '_'.join(['e'] + [str(p_j) for p_j in self._p])

    def mirror(self) -> MultiOrder:
        return MultiOrder(p=reversed(self._p))

    @property
    def is_palindrome(self) -> bool:
        return self._p == self._p[::-1]

    def feature_key(self) -> tuple[fr.Fraction, tuple[int, ...]]:
        """Orders features by order delta, then lexicographically."""
        return self.delta, self._p

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MultiOrder) and self._p == other._p

    def __lt__(self, other: MultiOrder) -> bool:
        return self._p < other._p

    def __hash__(self) -> int:
        return hash(self._p)

    def __len__(self) -> int:
        return len(self._p)

    def __repr__(self) -> str:
        return f'MultiOrder({self._p})'

    def __str__(self) -> str:
        return self.name


UNIT_ORDER = MultiOrder(p=())


@ft.lru_cache(maxsize=None)
def _generate_Mq(q: int) -> tuple[MultiOrder, ...]:
    if q == 1:
        return MultiOrder(p=(2,)),
    generated = set[tuple[int, ...]]()
    for order in _generate_Mq(q=q - 1):
        p = order.p
        generated.add((2,) + p)
        if len(p) > 1:
            generated.add((p[0] + 1, p[1] + 1) + p[2:])
    return tuple(MultiOrder(p=p) for p in sorted(generated))


def generate_Mq(q: int) -> list[MultiOrder]:
    """ Generates the multi-orders of order exactly q by applying the rules e_p -> e_(2, p) and
    e_(p1, p2, ...) -> e_(p1 + 1, p2 + 1, ...) to M_(q-1), starting from M_1 = {e_2}.

    :param q: The order, at least 1.
    :return: The multi-orders in lexicographic order.
    """
    if q < 1:
        raise ValueError(f'Multi-order sets are defined for q >= 1, got {q}')
    return list(_generate_Mq(q=q))


def reduce_mirrors(orders: t.Iterable[MultiOrder], keep: str = 'min') -> list[MultiOrder]:
    """ Keeps one representative of every mirror pair {p, reverse(p)}; palindromes are kept as they are.

    :param orders: The multi-orders to reduce.
    :param keep: "min" keeps the lexicographically smaller tuple of a pair, "max" the larger one.
    :return: The representatives in lexicographic order.
    """
    if keep not in ('min', 'max'):
        raise ValueError(f'keep must be "min" or "max", got "{keep}"')
    choose = min if keep == 'min' else max
    return sorted({choose(order, order.mirror()) for order in orders})


def generate_G(q: int, keep: str = 'min') -> list[MultiOrder]:
    """The independent multi-orders of order q, i.e. M_q with mirror pairs reduced."""
    return reduce_mirrors(orders=generate_Mq(q=q), keep=keep)


def generate_upto(q: int, keep: str = 'min') -> list[MultiOrder]:
    """G_1 through G_q ordered by order delta and then lexicographically."""
    orders = list[MultiOrder]()
    for order_q in range(1, q + 1):
        orders.extend(generate_G(q=order_q, keep=keep))
    return orders


def mirror_value(order: MultiOrder, value: complex) -> complex:
    """ Converts the value of e_p into the value of its mirror sum, (-1)^alpha C^(n+1) e_p, where C is complex conjugation.

    :param order: The multi-order p whose sum has the given value.
    :param value: The value of e_p.
    :return: The value of e_(reverse(p)).
    """
    value = complex(value)
    if (order.n + 1) % 2 == 1:
        value = value.conjugate()
    return -value if order.alpha % 2 == 1 else value


class SumCache:
    """
    Intermediate results of structural-sum evaluations: the Eisenstein matrices of a configuration and the vectors obtained by folding
    a chain suffix. Keys start with the configuration token, so one cache may serve many configurations. With ``synchronized=True`` the
    cache may be shared between threads; otherwise use one cache per thread.
    """
    def __init__(self, synchronized: bool = False) -> None:
        self._entries = dict[tuple, np.ndarray]()
        self._lock = th.Lock() if synchronized else None

    @property
    def synchronized(self) -> bool:
        return self._lock is not None

    def get_or_compute(self, key: tuple, compute: t.Callable[[], np.ndarray]) -> np.ndarray:
        """ Returns the cached value of ``key``, computing and storing it first if needed.

        :param key: The cache key.
        :param compute: Computes the value on a miss.
        :return: The cached value.
        """
        if self._lock is None:
            value = self._entries.get(key)
            if value is None:
                value = compute()
                value.setflags(write=False)
                self._entries[key] = value
            return value
        with self._lock:
            value = self._entries.get(key)
        if value is None:
            value = compute()
            value.setflags(write=False)
            with self._lock:
                value = self._entries.setdefault(key, value)
        return value

    def clear(self, config: c.DiskConfiguration | None = None) -> None:
        """Drops every entry, or only the entries of ``config``."""
        if self._lock is not None:
            self._lock.acquire()
        try:
            if config is None:
                self._entries.clear()
            else:
                for key in [key for key in self._entries if key[0] == config.token]:
                    del self._entries[key]
        finally:
            if self._lock is not None:
                self._lock.release()

    def __len__(self) -> int:
        return len(self._entries)


def _neumaier_row_sums(terms: np.ndarray) -> np.ndarray:
    """ Sums a real matrix along its rows with Neumaier's compensated summation, vectorized over the rows."""
    total = np.zeros(terms.shape[0])
    compensation = np.zeros(terms.shape[0])
    for column in terms.T:
        new_total = total + column
        compensation += np.where(
            np.abs(total) >= np.abs(column), (total - new_total) + column, (column - new_total) + total)
        total = new_total
    return total + compensation


def _compensated_matvec(matrix: np.ndarray, vector: np.ndarray) -> np.ndarray:
    products = matrix * vector
    return _neumaier_row_sums(terms=products.real) + 1j * _neumaier_row_sums(terms=products.imag)


def _check_lattice(config: c.DiskConfiguration, ev: la.EisensteinEvaluator) -> None:
    if config.lattice != ev.lattice:
        raise c.ConfigurationError(
            f'The configuration lattice {config.lattice!r} differs from the lattice of the Eisenstein evaluator {ev.lattice!r}')


def eisenstein_matrix(
        config: c.DiskConfiguration, p: int, conjugate: bool, ev: la.EisensteinEvaluator, cache: SumCache) -> np.ndarray:
    """ The matrix E_p(a_i - a_j) of a configuration (conjugated if requested), with E_p(0) = S_p on the diagonal.

    :param config: The configuration.
    :param p: The index of the Eisenstein function.
    :param conjugate: Whether to conjugate every entry.
    :param ev: The Eisenstein evaluator.
    :param cache: The cache holding the matrices of the configuration.
    :return: The N x N matrix.
    """
    def compute() -> np.ndarray:
        centers = config.centers
        values = np.asarray(ev.evaluate(n=p, z=centers[:, np.newaxis] - centers[np.newaxis, :]))
        return values.conjugate() if conjugate else values.copy()
    return cache.get_or_compute(key=(config.token, 'matrix', p, conjugate), compute=compute)


def _start_exponent(suffix: tuple[int, ...]) -> int:
    """The exponent t of the index in front of a chain suffix, computed backward from t_n = 1."""
    exponent = 1
    for p_j in reversed(suffix):
        exponent = p_j - exponent
    return exponent


def _suffix_vector(
        config: c.DiskConfiguration, suffix: tuple[int, ...], conjugate_first: bool, ev: la.EisensteinEvaluator,
        cache: SumCache) -> np.ndarray:
    """ Folds the chain suffix (p_j, ..., p_n) right to left: v = nu^t (.) (A_j v'), where v' belongs to the shorter suffix and the
    factors alternate between plain and conjugated Eisenstein matrices."""
    def compute() -> np.ndarray:
        weights = config.nu_j ** _start_exponent(suffix=suffix)
        if not suffix:
            return weights.astype(complex)
        rest = _suffix_vector(config=config, suffix=suffix[1:], conjugate_first=not conjugate_first, ev=ev, cache=cache)
        matrix = eisenstein_matrix(config=config, p=suffix[0], conjugate=conjugate_first, ev=ev, cache=cache)
        return weights * _compensated_matvec(matrix=matrix, vector=rest)
    return cache.get_or_compute(key=(config.token, 'suffix', suffix, conjugate_first), compute=compute)


def eval_sum(
        config: c.DiskConfiguration, order: MultiOrder, ev: la.EisensteinEvaluator, cache: SumCache | None = None) -> complex:
    """ Evaluates the structural sum e_p of a configuration: the chain over indices k_0, ..., k_n of the weights nu_(k_j)^(t_j) times
    E_(p_1)(a_(k_0) - a_(k_1)), conj(E_(p_2)(a_(k_1) - a_(k_2))), ... (every even factor conjugated), normalized by eta^(delta + 1).

    The chain is folded right to left as matrix-vector products, each O(N^2). Eisenstein matrices and folded suffixes are kept in
    ``cache`` so that sums sharing a suffix reuse it.

    :param config: The disk configuration.
    :param order: The multi-order p.
    :param ev: The Eisenstein evaluator of the configuration's lattice.
    :param cache: The cache of intermediate results. A private cache is used if None.
    :return: e_p.
    :raises ConfigurationError: Raised if the configuration and the evaluator have different lattices.
    """
    _check_lattice(config=config, ev=ev)
    cache = cache if cache is not None else SumCache()
    vector = _suffix_vector(config=config, suffix=order.p, conjugate_first=False, ev=ev, cache=cache)
    total = complex(math.fsum(vector.real), math.fsum(vector.imag))
    return total / config.eta ** (float(order.delta) + 1)


def eval_sum_bruteforce(
        config: c.DiskConfiguration, order: MultiOrder, ev: la.EisensteinEvaluator, max_disks: int = DEFAULT_ORACLE_MAX_DISKS,
        max_length: int = DEFAULT_ORACLE_MAX_LENGTH) -> complex:
    """ Evaluates e_p term by term over all N^(n+1) index chains. Reference implementation for checking ``eval_sum``.

    :param config: The disk configuration.
    :param order: The multi-order p.
    :param ev: The Eisenstein evaluator of the configuration's lattice.
    :param max_disks: The largest N accepted.
    :param max_length: The largest n accepted.
    :return: e_p.
    :raises OracleCapError: Raised if N or n exceed the caps.
    """
    _check_lattice(config=config, ev=ev)
    if config.n_disks > max_disks or order.n > max_length:
        raise OracleCapError(
            f'The brute-force evaluator accepts at most {max_disks} disks and multi-orders of length {max_length}, got '
            f'{config.n_disks} disks and length {order.n}')
    centers = np.asarray(config.centers, dtype=complex)
    nu = np.asarray(config.nu_j, dtype=float)
    n_disks = centers.size
    differences = centers[:, np.newaxis] - centers[np.newaxis, :]
    tables = {p_j: np.asarray(ev.evaluate(n=p_j, z=differences)) for p_j in set(order.p)}
    exponents = order.t
    length = order.n + 1
    n_chains = n_disks ** length
    partial_real = list[float]()
    partial_imag = list[float]()
    # Chains are enumerated in blocks, chain index = sum of k_j N^(n - j)
    for start in range(0, n_chains, _ORACLE_BLOCK):
        index = np.arange(start, min(start + _ORACLE_BLOCK, n_chains), dtype=np.int64)
        chain = [(index // n_disks ** (length - 1 - j)) % n_disks for j in range(length)]
        terms = np.ones(index.size, dtype=complex)
        for j in range(length):
            terms *= nu[chain[j]] ** exponents[j]
        for j in range(1, length):
            values = tables[order.p[j - 1]][chain[j - 1], chain[j]]
            terms *= np.conjugate(values) if j % 2 == 0 else values
        partial_real.append(math.fsum(terms.real))
        partial_imag.append(math.fsum(terms.imag))
    total = complex(math.fsum(partial_real), math.fsum(partial_imag))
    return total / config.eta ** (float(order.delta) + 1)


class StructuralSumEvaluator:
    """
    Evaluates many structural sums of one configuration, sharing Eisenstein matrices and folded suffixes through a cache. With
    ``use_mirrors=True`` only the canonical member of a mirror pair is folded and its partner follows from the mirror relation.
    """
    def __init__(
            self, config: c.DiskConfiguration, ev: la.EisensteinEvaluator, cache: SumCache | None = None,
            use_mirrors: bool = True) -> None:
        _check_lattice(config=config, ev=ev)
        self._config = config
        self._ev = ev
        self._cache = cache if cache is not None else SumCache()
        self._use_mirrors = use_mirrors
        self._values = dict[MultiOrder, complex]()

    @property
    def config(self) -> c.DiskConfiguration:
        return self._config

    def evaluate(self, order: MultiOrder) -> complex:
        value = self._values.get(order)
        if value is not None:
            return value
        if order == UNIT_ORDER:
            value = 1 + 0j
        elif self._use_mirrors and order.mirror() < order:
            value = mirror_value(order=order.mirror(), value=self.evaluate(order=order.mirror()))
        else:
            value = eval_sum(config=self._config, order=order, ev=self._ev, cache=self._cache)
        self._values[order] = value
        return value

    def evaluate_many(self, orders: t.Iterable[MultiOrder]) -> dict[MultiOrder, complex]:
        return {order: self.evaluate(order=order) for order in orders}
