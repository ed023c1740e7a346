"""
Structural-Sums Feature Vectors
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
|Functionality| for assembling the feature vectors X_q and X'_q of a disk configuration, projecting them onto real values and
storing them as feature tables.
"""
from __future__ import annotations
import logging as log
import multiprocessing as mp
import os
import typing as t
import numpy as np
import tqdm
from . import configuration as c
from . import lattice as la
from . import sums as s
from . import _utils as u

MAX_Q = 12
PROJECTIONS = ('complex', 'abs', 're', 'im', 'arg', 're_im')
_SUFFIXES = ('abs', 're', 'im', 'arg')


class FeatureVector:
    """
    An ordered map from multi-orders to complex structural sums, ordered by order delta and then lexicographically.

    :ivar dict entries: The structural sums keyed by multi-order.
    :ivar int order_q: The declared order q of the vector.
    :ivar bool prime: Whether the vector is the diagonal subset X'_q rather than X_q.
    """
    def __init__(self, entries: dict[s.MultiOrder, complex], order_q: int, prime: bool = False) -> None:
        self.entries = {order: complex(entries[order]) for order in sorted(entries, key=s.MultiOrder.feature_key)}
        self.order_q = order_q
        self.prime = prime

    @property
    def orders(self) -> list[s.MultiOrder]:
        return list(self.entries)

    @property
    def values(self) -> np.ndarray:
        return np.array(list(self.entries.values()), dtype=complex)

    @property
    def zero_entries(self) -> list[s.MultiOrder]:
        """The entries that are exactly 0, whose argument is defined as 0."""
        return [order for order, value in self.entries.items() if value == 0]

    def __len__(self) -> int:
        return len(self.entries)


def xq_orders(q: int) -> list[s.MultiOrder]:
    """The keys of X_q: G_1 through G_q."""
    if not 1 <= q <= MAX_Q:
        raise ValueError(f'q must be between 1 and {MAX_Q}, got {q}')
    return s.generate_upto(q=q)


def xq_prime_orders(q: int) -> list[s.MultiOrder]:
    """The keys of X'_q: e_(p, p) for 2 <= p <= q."""
    if not 2 <= q <= MAX_Q:
        raise ValueError(f'q must be between 2 and {MAX_Q} for the diagonal feature vector, got {q}')
    return [s.MultiOrder(p=(p, p)) for p in range(2, q + 1)]


def build_Xq(
        config: c.DiskConfiguration, q: int, ev: la.EisensteinEvaluator, cache: s.SumCache | None = None) -> FeatureVector:
    """ Evaluates every independent structural sum of order at most q.

    :param config: The disk configuration.
    :param q: The order of the feature vector, 1 <= q <= 12.
    :param ev: The Eisenstein evaluator of the configuration's lattice.
    :param cache: The cache of intermediate results.
    :return: The complex feature vector X_q.
    """
    evaluator = s.StructuralSumEvaluator(config=config, ev=ev, cache=cache, use_mirrors=False)
    return FeatureVector(entries=evaluator.evaluate_many(orders=xq_orders(q=q)), order_q=q)


def build_Xq_prime(
        config: c.DiskConfiguration, q: int, ev: la.EisensteinEvaluator, cache: s.SumCache | None = None) -> FeatureVector:
    """ Evaluates the diagonal sums e_(p, p), 2 <= p <= q.

    :param config: The disk configuration.
    :param q: The order of the feature vector, 2 <= q <= 12.
    :param ev: The Eisenstein evaluator of the configuration's lattice.
    :param cache: The cache of intermediate results.
    :return: The complex feature vector X'_q.
    """
    evaluator = s.StructuralSumEvaluator(config=config, ev=ev, cache=cache, use_mirrors=False)
    return FeatureVector(entries=evaluator.evaluate_many(orders=xq_prime_orders(q=q)), order_q=q, prime=True)


def _project_values(values: np.ndarray, projection: str) -> np.ndarray:
    if projection == 'complex':
        return values
    elif projection == 'abs':
        return np.abs(values)
    elif projection == 're':
        return values.real.copy()
    elif projection == 'im':
        return values.imag.copy()
    elif projection == 'arg':
        # np.angle gives (-pi, pi] and angle(0) = 0
        return np.angle(values)
    elif projection == 're_im':
        return np.concatenate([values.real, values.imag], axis=-1)
    raise ValueError(f'Unknown projection "{projection}". Valid values are: {", ".join(PROJECTIONS)}')


def project(v: FeatureVector, projection: str) -> np.ndarray:
    """ Projects a complex feature vector onto reals.

    :param v: The feature vector.
    :param projection: One of complex, abs, re, im, arg (principal argument in (-pi, pi]) or re_im (real parts followed by imaginary parts).
    :return: The projected values (complex for the "complex" projection).
    """
    if projection == 'arg' and v.zero_entries:
        log.warning(
            f'The argument of the exactly zero entries {", ".join(order.name for order in v.zero_entries)} is defined as 0')
    return _project_values(values=v.values, projection=projection)


def feature_names(orders: t.Sequence[s.MultiOrder], projection: str) -> list[str]:
    """ The column names of projected features, e.g. "e_2_3_3_abs". Complex features are named by their multi-order alone.

    :param orders: The multi-orders in feature order.
    :param projection: The projection.
    :return: The names, in the order of the projected values.
    """
    if projection == 'complex':
        return [order.name for order in orders]
    elif projection == 're_im':
        return [f'{order.name}_re' for order in orders] + [f'{order.name}_im' for order in orders]
    elif projection in _SUFFIXES:
        return [f'{order.name}_{projection}' for order in orders]
    raise ValueError(f'Unknown projection "{projection}". Valid values are: {", ".join(PROJECTIONS)}')


class FeatureTable:
    """
    Projected feature vectors of many samples, one row per sample, with the sample names and class labels.

    :ivar list[str] samples: The sample names.
    :ivar list[str] labels: The class label of every sample.
    :ivar list[str] columns: The feature column names.
    :ivar numpy.ndarray values: The samples x columns matrix of feature values.
    """
    def __init__(self, samples: list[str], labels: list[str], columns: list[str], values: np.ndarray) -> None:
        values = np.asarray(values, dtype=float).reshape(len(samples), len(columns))
        if len(samples) != len(labels):
            raise ValueError(f'Got {len(samples)} samples but {len(labels)} labels')
        self.samples = list(samples)
        self.labels = list(labels)
        self.columns = list(columns)
        self.values = values
        self._column_index = {column: i for i, column in enumerate(self.columns)}

    @staticmethod
    def from_vectors(
            samples: list[str], labels: list[str], vectors: list[FeatureVector], projection: str = 're_im') -> FeatureTable:
        if projection == 'complex':
            raise ValueError('Feature tables hold real values; store complex vectors with the "re_im" projection')
        if not vectors:
            raise ValueError('A feature table needs at least one feature vector')
        orders = vectors[0].orders
        for vector in vectors:
            if vector.orders != orders:
                raise ValueError('All feature vectors of a table must have the same keys')
        values = np.array([project(v=vector, projection=projection) for vector in vectors]).reshape(len(vectors), -1)
        return FeatureTable(samples=samples, labels=labels, columns=feature_names(orders=orders, projection=projection), values=values)

    @staticmethod
    def concatenate(tables: t.Sequence[FeatureTable]) -> FeatureTable:
        columns = tables[0].columns
        for table in tables[1:]:
            if table.columns != columns:
                raise ValueError('Feature tables with different columns cannot be combined')
        return FeatureTable(
            samples=[sample for table in tables for sample in table.samples],
            labels=[label for table in tables for label in table.labels], columns=columns,
            values=np.vstack([table.values for table in tables]))

    def to_csv(self) -> str:
        rows = (
            [sample, label] + [float(value) for value in row] for sample, label, row in zip(self.samples, self.labels, self.values))
        return u.to_csv(header=['sample', 'label'] + self.columns, rows=rows)

    def save(self, file_path: str) -> None:
        u.save_output(output_target=file_path, output_content=self.to_csv())

    @staticmethod
    def load(file_path: str) -> FeatureTable:
        """ Loads a feature table written by ``save``.

        :param file_path: Path to the CSV file.
        :return: The table.
        """
        header, rows = u.read_csv(file_path=file_path)
        if header[:2] != ['sample', 'label']:
            raise ValueError(f'The feature table at {file_path} must start with the columns sample,label')
        values = np.array([[float(value) for value in row[2:]] for row in rows]).reshape(len(rows), len(header) - 2)
        return FeatureTable(
            samples=[row[0] for row in rows], labels=[row[1] for row in rows], columns=header[2:], values=values)

    def _parsed_columns(self) -> dict[s.MultiOrder, dict[str, int]]:
        parsed = dict[s.MultiOrder, dict[str, int]]()
        for i, column in enumerate(self.columns):
            base, _, suffix = column.rpartition('_')
            if suffix in _SUFFIXES:
                order = s.MultiOrder.parse(name=base)
            else:
                order, suffix = s.MultiOrder.parse(name=column), 're'
            parsed.setdefault(order, {})[suffix] = i
        return parsed

    def orders(self) -> list[s.MultiOrder]:
        return sorted(self._parsed_columns(), key=s.MultiOrder.feature_key)

    def select(self, q: int, projection: str, prime: bool = False) -> tuple[np.ndarray, list[str]]:
        """ Takes the sub-vector X_q (or X'_q) of every sample and projects it. Any projection can be derived from a table that holds
        both real and imaginary parts; otherwise the requested projection must be stored.

        :param q: The order of the sub-vector.
        :param projection: One of abs, re, im, arg or re_im.
        :param prime: Whether to take the diagonal subset X'_q.
        :return: The samples x features matrix and the feature names.
        :raises ValueError: Raised if the table lacks the needed sums or parts.
        """
        parsed = self._parsed_columns()
        wanted = xq_prime_orders(q=q) if prime else xq_orders(q=q)
        missing = [order.name for order in wanted if order not in parsed]
        if missing:
            raise ValueError(f'The feature table lacks the sums {", ".join(missing)} needed for q={q}')
        if all('re' in parsed[order] and 'im' in parsed[order] for order in wanted):
            complex_values = np.column_stack([
                self.values[:, parsed[order]['re']] + 1j * self.values[:, parsed[order]['im']] for order in wanted])
            return _project_values(values=complex_values, projection=projection), feature_names(orders=wanted, projection=projection)
        if projection in _SUFFIXES and all(projection in parsed[order] for order in wanted):
            selected = np.column_stack([self.values[:, parsed[order][projection]] for order in wanted])
            return selected, feature_names(orders=wanted, projection=projection)
        raise ValueError(f'The "{projection}" projection cannot be derived from the columns of the feature table')


def default_label(file_path: str) -> str:
    """The class label of a configuration file: the name of the directory holding it."""
    return os.path.basename(os.path.dirname(os.path.abspath(file_path)))


def sample_name(file_path: str) -> str:
    return os.path.splitext(os.path.basename(file_path))[0]


_evaluators = dict[tuple[la.Lattice, float], la.EisensteinEvaluator]()


def get_evaluator(lattice: la.Lattice, tolerance: float) -> la.EisensteinEvaluator:
    ev = _evaluators.get((lattice, tolerance))
    if ev is None:
        ev = la.EisensteinEvaluator(lattice=lattice, tolerance=tolerance)
        _evaluators[lattice, tolerance] = ev
    return ev


def vector_from_file(file_path: str, q: int, prime: bool = False, tolerance: float = u.DEFAULT_TOLERANCE) -> FeatureVector:
    """ Loads a configuration and builds its feature vector, reusing one Eisenstein evaluator per lattice.

    :param file_path: Path to the configuration (JSON, or CSV on the unit square).
    :param q: The order of the feature vector.
    :param prime: Whether to build the diagonal vector X'_q.
    :param tolerance: The tolerance of the Eisenstein series.
    :return: The feature vector.
    """
    config = c.DiskConfiguration.load(file_path=file_path)
    ev = get_evaluator(lattice=config.lattice, tolerance=tolerance)
    if prime:
        return build_Xq_prime(config=config, q=q, ev=ev)
    return build_Xq(config=config, q=q, ev=ev)


def build_feature_table(
        file_paths: list[str], q: int, projection: str = 're_im', prime: bool = False, labels: list[str] | None = None,
        tolerance: float = u.DEFAULT_TOLERANCE, n_workers: int = 1) -> FeatureTable:
    """ Builds the feature table of many configuration files, in a pool of processes if ``n_workers`` > 1.

    :param file_paths: The configuration files.
    :param q: The order of the feature vectors.
    :param projection: The projection stored in the table.
    :param prime: Whether to build the diagonal vectors X'_q.
    :param labels: The class of every file. Defaults to the name of the directory holding it.
    :param tolerance: The tolerance of the Eisenstein series.
    :param n_workers: The number of processes.
    :return: The table, one row per file in the given order.
    """
    labels = labels if labels is not None else [default_label(file_path=file_path) for file_path in file_paths]
    progress_bar = tqdm.tqdm(total=len(file_paths))
    vectors = list[FeatureVector]()
    if n_workers <= 1:
        for file_path in file_paths:
            vectors.append(vector_from_file(file_path=file_path, q=q, prime=prime, tolerance=tolerance))
            progress_bar.update(n=1)
    else:
        with mp.Pool(n_workers, initializer=_set_feature_settings, initargs=(q, prime, tolerance)) as pool:
            async_results = [pool.apply_async(_get_vector, (file_path,)) for file_path in file_paths]
            for async_result in async_results:
                vectors.append(async_result.get())
                progress_bar.update(n=1)
    progress_bar.close()
    return FeatureTable.from_vectors(
        samples=[sample_name(file_path=file_path) for file_path in file_paths], labels=labels, vectors=vectors,
        projection=projection)


_global_q: int = 1
_global_prime: bool = False
_global_tolerance: float = u.DEFAULT_TOLERANCE


def _set_feature_settings(q: int, prime: bool, tolerance: float) -> None:
    """ Sets global variables to be used in each process within a multiprocessing pool.

    :param q: The order of the feature vectors.
    :param prime: Whether to build the diagonal vectors.
    :param tolerance: The tolerance of the Eisenstein series.
    """
    global _global_q
    global _global_prime
    global _global_tolerance

    _global_q = q  # pragma: no cover
    _global_prime = prime  # pragma: no cover
    _global_tolerance = tolerance  # pragma: no cover


def _get_vector(file_path: str) -> FeatureVector:
    return vector_from_file(file_path=file_path, q=_global_q, prime=_global_prime, tolerance=_global_tolerance)  # pragma: no cover
