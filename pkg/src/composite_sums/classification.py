"""
Classification Experiments
~~~~~~~~~~~~~~~~~~~~~~~~~~
|Functionality| for classifying composites by their feature vectors with Gaussian Naive Bayes: random k-per-class splits,
stratified 25:75 cross-validation, accuracy grids over feature orders and projections, confusion matrices and the exhaustive
two-feature scan.
"""
from __future__ import annotations
import itertools as it
import logging as log
import multiprocessing as mp
import typing as t
import numpy as np
import scipy.stats as st
import sklearn.metrics as skm
import sklearn.model_selection as skms
import tqdm
from . import features as f
from . import _utils as u

VARIANCE_FLOOR_FACTOR = 1e-9
DEFAULT_REPEATS = 10
DEFAULT_N_FOLDS = 3
DEFAULT_PROJECTIONS = ('abs', 're', 'im', 'arg')

Split = tuple[np.ndarray, np.ndarray]


class TrainingError(ValueError):
    """Raised when a classifier cannot be trained or applied: too few samples in a class, k too large or mismatched dimensions."""


class LabeledDataset:
    """
    A samples x features matrix with a class index for every sample.

    :ivar numpy.ndarray samples: The feature matrix.
    :ivar numpy.ndarray labels: The class index of every sample, into ``class_names``.
    :ivar list[str] feature_names: The name of every feature column.
    :ivar list[str] class_names: The name of every class.
    """
    def __init__(
            self, samples: np.ndarray, labels: t.Sequence[str] | np.ndarray, feature_names: t.Sequence[str],
            class_names: t.Sequence[str] | None = None) -> None:
        """
        :param samples: The samples x features matrix.
        :param labels: The class of every sample, either as class names or as class indices when ``class_names`` is given.
        :param feature_names: The name of every feature column.
        :param class_names: The class names. Defaults to the sorted distinct labels.
        :raises ValueError: Raised if the shapes disagree, values are missing or there are fewer than two classes.
        """
        samples = np.asarray(samples, dtype=float)
        if samples.ndim == 1:
            samples = samples.reshape(-1, 1)
        labels = list(labels)
        if samples.shape[0] != len(labels):
            raise ValueError(f'Got {samples.shape[0]} samples but {len(labels)} labels')
        if samples.shape[1] != len(feature_names):
            raise ValueError(f'Got {samples.shape[1]} feature columns but {len(feature_names)} feature names')
        if not np.all(np.isfinite(samples)):
            raise ValueError('The dataset has missing or non-finite values')
        if class_names is None:
            class_names = sorted({str(label) for label in labels})
            labels = [class_names.index(str(label)) for label in labels]
        elif labels and isinstance(labels[0], str):
            unknown = {label for label in labels if label not in class_names}
            if unknown:
                raise ValueError(f'Labels {", ".join(sorted(unknown))} are not among the class names')
            labels = [list(class_names).index(label) for label in labels]
        if len(class_names) < 2:
            raise ValueError(f'A classification dataset needs at least 2 classes, got {len(class_names)}')
        self.samples = samples
        self.labels = np.asarray(labels, dtype=int)
        self.feature_names = list(feature_names)
        self.class_names = list(class_names)

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    @property
    def class_counts(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.n_classes)

    def subset(self, indices: np.ndarray) -> LabeledDataset:
        return LabeledDataset(
            samples=self.samples[indices], labels=self.labels[indices], feature_names=self.feature_names,
            class_names=self.class_names)

    def select_features(self, columns: t.Sequence[int]) -> LabeledDataset:
        columns = list(columns)
        return LabeledDataset(
            samples=self.samples[:, columns], labels=self.labels, feature_names=[self.feature_names[i] for i in columns],
            class_names=self.class_names)

    @staticmethod
    def from_feature_table(
            table: f.FeatureTable, q: int, projection: str, prime: bool = False,
            class_names: t.Sequence[str] | None = None) -> LabeledDataset:
        """ Builds a dataset from the sub-vector X_q (or X'_q) of a feature table under one projection.

        :param table: The feature table.
        :param q: The order of the sub-vector.
        :param projection: The projection of the complex sums.
        :param prime: Whether to take the diagonal subset X'_q.
        :param class_names: The class names. Defaults to the sorted distinct labels of the table.
        :return: The dataset.
        """
        samples, names = table.select(q=q, projection=projection, prime=prime)
        return LabeledDataset(samples=samples, labels=table.labels, feature_names=names, class_names=class_names)


class GaussianNBModel:
    """
    Per-class Gaussian likelihoods of independent features.

    :ivar numpy.ndarray means: The classes x features means.
    :ivar numpy.ndarray variances: The classes x features variances, all at least ``epsilon``.
    :ivar numpy.ndarray priors: The class priors, summing to 1.
    :ivar float epsilon: The variance floor.
    """
    def __init__(self, means: np.ndarray, variances: np.ndarray, priors: np.ndarray, epsilon: float) -> None:
        self.means = means
        self.variances = variances
        self.priors = priors
        self.epsilon = epsilon
        for array in (self.means, self.variances, self.priors):
            array.setflags(write=False)

    @property
    def n_features(self) -> int:
        return self.means.shape[1]


def nb_fit(train: LabeledDataset) -> GaussianNBModel:
    """ Fits Gaussian Naive Bayes. Variances use the population convention (divided by the class count) and are floored at
    1e-9 times the largest feature variance of the training data. Priors are the class frequencies.

    :param train: The training data.
    :return: The fitted model.
    :raises TrainingError: Raised if a class has fewer than 2 training samples.
    """
    counts = train.class_counts
    if np.any(counts < 2):
        sparse_class = train.class_names[int(np.argmax(counts < 2))]
        raise TrainingError(f'Every class needs at least 2 training samples but class "{sparse_class}" has {counts.min()}')
    means = np.array([train.samples[train.labels == label].mean(axis=0) for label in range(train.n_classes)])
    variances = np.array([train.samples[train.labels == label].var(axis=0) for label in range(train.n_classes)])
    max_variance = float(train.samples.var(axis=0).max())
    epsilon = VARIANCE_FLOOR_FACTOR * max_variance if max_variance > 0 else VARIANCE_FLOOR_FACTOR
    return GaussianNBModel(
        means=means, variances=np.maximum(variances, epsilon), priors=counts / counts.sum(), epsilon=epsilon)


def nb_log_posteriors(model: GaussianNBModel, samples: np.ndarray) -> np.ndarray:
    """ The unnormalized log-posteriors log P(C_j) + sum_i log N(x_i; mean_ji, variance_ji).

    :param model: The fitted model.
    :param samples: The samples x features matrix.
    :return: The samples x classes log-posteriors.
    :raises TrainingError: Raised if the number of features differs from the model's.
    """
    samples = np.asarray(samples, dtype=float)
    if samples.ndim == 1:
        samples = samples.reshape(1, -1)
    if samples.shape[1] != model.n_features:
        raise TrainingError(f'The model was fitted on {model.n_features} features but got {samples.shape[1]}')
    squared = (samples[:, np.newaxis, :] - model.means[np.newaxis, :, :]) ** 2 / model.variances[np.newaxis, :, :]
    normalization = np.log(2 * np.pi * model.variances).sum(axis=1)
    return np.log(model.priors)[np.newaxis, :] - 0.5 * (normalization[np.newaxis, :] + squared.sum(axis=2))


def nb_predict(model: GaussianNBModel, samples: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """ Predicts the class of every sample as the argmax of its log-posteriors, ties going to the lowest class index.

    :param model: The fitted model.
    :param samples: The samples x features matrix.
    :return: The predicted class indices and the samples x classes log-posteriors.
    :raises TrainingError: Raised if the number of features differs from the model's.
    """
    log_posteriors = nb_log_posteriors(model=model, samples=samples)
    return np.argmax(log_posteriors, axis=1), log_posteriors


def accuracy(labels: np.ndarray, predicted: np.ndarray) -> float:
    """The ratio of correctly classified samples to all the samples."""
    return float(skm.accuracy_score(labels, predicted))


def fit_and_score(dataset: LabeledDataset, split: Split) -> float:
    train_indices, test_indices = split
    model = nb_fit(train=dataset.subset(indices=train_indices))
    predicted, _ = nb_predict(model=model, samples=dataset.samples[test_indices])
    return accuracy(labels=dataset.labels[test_indices], predicted=predicted)


def confusion_matrix(model: GaussianNBModel, test: LabeledDataset) -> np.ndarray:
    """ Counts how many samples of class C_i are assigned to class C_j.

    :param model: The fitted model.
    :param test: The test data.
    :return: The classes x classes count matrix; row i sums to the number of test samples of class i.
    """
    predicted, _ = nb_predict(model=model, samples=test.samples)
    return skm.confusion_matrix(test.labels, predicted, labels=list(range(test.n_classes)))


def random_splits(dataset: LabeledDataset, k: int, repeats: int, seed: int) -> list[Split]:
    """ Draws ``repeats`` splits, each training on k random samples of every class and testing on the rest.

    :param dataset: The data to split.
    :param k: The number of training samples per class.
    :param repeats: The number of splits.
    :param seed: The seed of the splits.
    :return: The (train indices, test indices) of every split.
    :raises TrainingError: Raised if a class does not have more than k samples.
    """
    counts = dataset.class_counts
    if k < 2 or np.any(counts <= k):
        raise TrainingError(
            f'k must be at least 2 and below the size of the smallest class ({counts.min()} samples), got {k}')
    rng = np.random.default_rng(seed)
    class_indices = [np.flatnonzero(dataset.labels == label) for label in range(dataset.n_classes)]
    splits = list[Split]()
    for _ in range(repeats):
        train, test = list[np.ndarray](), list[np.ndarray]()
        for indices in class_indices:
            shuffled = rng.permutation(indices)
            train.append(shuffled[:k])
            test.append(shuffled[k:])
        splits.append((np.sort(np.concatenate(train)), np.sort(np.concatenate(test))))
    return splits


def cross_validation_splits(dataset: LabeledDataset, seed: int, n_folds: int = DEFAULT_N_FOLDS) -> list[Split]:
    """ The 25:75 cross-validation: the data are cut into four stratified quarters and each of the first ``n_folds`` quarters in
    turn is the training set while the other three quarters are the test set.

    :param dataset: The data to split.
    :param seed: The seed of the shuffle.
    :param n_folds: The number of rounds, at most 4.
    :return: The (train indices, test indices) of every round.
    :raises TrainingError: Raised if a class is too small for a quarter to hold 2 of its samples.
    """
    if not 1 <= n_folds <= 4:
        raise ValueError(f'The number of cross-validation rounds must be between 1 and 4, got {n_folds}')
    if dataset.class_counts.min() < 8:
        raise TrainingError(
            f'25:75 cross-validation needs at least 8 samples per class, the smallest class has {dataset.class_counts.min()}')
    folds = skms.StratifiedKFold(n_splits=4, shuffle=True, random_state=seed)
    splits = list[Split]()
    for rest, quarter in it.islice(folds.split(dataset.samples, dataset.labels), n_folds):
        splits.append((quarter, rest))
    return splits


def cross_validate(dataset: LabeledDataset, seed: int, n_folds: int = DEFAULT_N_FOLDS) -> float:
    """The mean accuracy over the rounds of the 25:75 cross-validation."""
    splits = cross_validation_splits(dataset=dataset, seed=seed, n_folds=n_folds)
    return float(np.mean([fit_and_score(dataset=dataset, split=split) for split in splits]))


def cross_validated_confusion(dataset: LabeledDataset, seed: int, n_folds: int = DEFAULT_N_FOLDS) -> np.ndarray:
    """The confusion matrices of the rounds of the 25:75 cross-validation, summed."""
    matrix = np.zeros((dataset.n_classes, dataset.n_classes), dtype=int)
    for train_indices, test_indices in cross_validation_splits(dataset=dataset, seed=seed, n_folds=n_folds):
        model = nb_fit(train=dataset.subset(indices=train_indices))
        matrix += confusion_matrix(model=model, test=dataset.subset(indices=test_indices))
    return matrix


def mirror_pair_mass(matrix: np.ndarray, pairs: t.Sequence[tuple[int, int]] | None = None) -> tuple[int, int]:
    """ Splits the off-diagonal mass of a confusion matrix into the cells of mirror-image class pairs and all other cells.

    :param matrix: The confusion matrix.
    :param pairs: The mirror class pairs. Defaults to (0, 1), (2, 3), ...
    :return: The mass on mirror-pair cells and the mass on the other off-diagonal cells.
    """
    matrix = np.asarray(matrix)
    pairs = pairs if pairs is not None else [(i, i + 1) for i in range(0, matrix.shape[0] - 1, 2)]
    mirror_mask = np.zeros(matrix.shape, dtype=bool)
    for i, j in pairs:
        mirror_mask[i, j] = mirror_mask[j, i] = True
    off_diagonal = ~np.eye(matrix.shape[0], dtype=bool)
    pair_mass = int(matrix[mirror_mask & off_diagonal].sum())
    return pair_mass, int(matrix[off_diagonal].sum()) - pair_mass


class AccuracyGrid:
    """
    Mean accuracies of an experiment by projection and feature order q.

    :ivar dict accuracies: Maps (projection, q) to the accuracy of every repeat.
    """
    def __init__(self, accuracies: dict[tuple[str, int], list[float]]) -> None:
        self.accuracies = accuracies

    @property
    def projections(self) -> list[str]:
        return list(dict.fromkeys(projection for projection, _ in self.accuracies))

    @property
    def q_values(self) -> list[int]:
        return sorted({q for _, q in self.accuracies})

    def mean(self, projection: str, q: int) -> float:
        return float(np.mean(self.accuracies[projection, q]))

    def to_csv(self) -> str:
        """One row per q and one column of mean accuracies per projection."""
        projections = self.projections
        rows = ([q] + [self.mean(projection=projection, q=q) for projection in projections] for q in self.q_values)
        return u.to_csv(header=['q'] + projections, rows=rows)


def q_trend(grid: AccuracyGrid, projection: str) -> float:
    """The Spearman rank correlation between q and the mean accuracy of a projection."""
    q_values = grid.q_values
    correlation = st.spearmanr(q_values, [grid.mean(projection=projection, q=q) for q in q_values]).correlation
    return float(correlation)


def _grid_cell(table: f.FeatureTable, class_names: list[str], projection: str, q: int, prime: bool, splits: list[Split]) -> list[float]:
    dataset = LabeledDataset.from_feature_table(table=table, q=q, projection=projection, prime=prime, class_names=class_names)
    return [fit_and_score(dataset=dataset, split=split) for split in splits]


def run_experiment(
        table: f.FeatureTable, k: int, q_range: t.Sequence[int] = range(1, 11), projections: t.Sequence[str] = DEFAULT_PROJECTIONS,
        repeats: int = DEFAULT_REPEATS, seed: int = 0, prime: bool = False, n_workers: int = 1,
        cross_validation: bool = False) -> AccuracyGrid:
    """ Scores Naive Bayes for every projection and order q. Every cell of the grid is scored on the same splits: either ``repeats``
    random splits with k training samples per class or, with ``cross_validation``, the rounds of the 25:75 cross-validation.

    :param table: The feature table holding X_q for the largest q of ``q_range``.
    :param k: The number of training samples per class of the random splits.
    :param q_range: The feature orders.
    :param projections: The projections.
    :param repeats: The number of random splits.
    :param seed: The seed of the splits.
    :param prime: Whether to use the diagonal vectors X'_q.
    :param n_workers: The number of processes.
    :param cross_validation: Whether to use the 25:75 cross-validation instead of random k-per-class splits.
    :return: The accuracy grid.
    :raises TrainingError: Raised if a class does not have more than k samples.
    """
    class_names = sorted(set(table.labels))
    reference = LabeledDataset.from_feature_table(
        table=table, q=max(q_range), projection=projections[0], prime=prime, class_names=class_names)
    if cross_validation:
        splits = cross_validation_splits(dataset=reference, seed=seed)
    else:
        splits = random_splits(dataset=reference, k=k, repeats=repeats, seed=seed)
    cells = [(projection, q) for projection in projections for q in q_range]
    accuracies = dict[tuple[str, int], list[float]]()
    progress_bar = tqdm.tqdm(total=len(cells))
    if n_workers <= 1:
        for projection, q in cells:
            accuracies[projection, q] = _grid_cell(
                table=table, class_names=class_names, projection=projection, q=q, prime=prime, splits=splits)
            progress_bar.update(n=1)
    else:
        with mp.Pool(n_workers, initializer=_set_experiment, initargs=(table, class_names, prime, splits)) as pool:
            async_results = [pool.apply_async(_get_grid_cell, cell) for cell in cells]
            for cell, async_result in zip(cells, async_results):
                accuracies[cell] = async_result.get()
                progress_bar.update(n=1)
    progress_bar.close()
    return AccuracyGrid(accuracies=accuracies)


class PairScore(t.NamedTuple):
    first: str
    second: str
    accuracy: float


def two_feature_scan(dataset: LabeledDataset, seed: int = 0, n_folds: int = DEFAULT_N_FOLDS) -> list[PairScore]:
    """ Scores every pair of features by its cross-validated 25:75 accuracy, all pairs on the same folds.

    :param dataset: The data, typically the real parts of e_(p,p) for 2 <= p <= 10.
    :param seed: The seed of the folds.
    :param n_folds: The number of cross-validation rounds.
    :return: The pairs ranked by descending accuracy, ties kept in column order.
    """
    splits = cross_validation_splits(dataset=dataset, seed=seed, n_folds=n_folds)
    scores = list[PairScore]()
    for i, j in it.combinations(range(len(dataset.feature_names)), 2):
        pair = dataset.select_features(columns=(i, j))
        mean_accuracy = float(np.mean([fit_and_score(dataset=pair, split=split) for split in splits]))
        scores.append(PairScore(first=dataset.feature_names[i], second=dataset.feature_names[j], accuracy=mean_accuracy))
    log.debug(f'Scored {len(scores)} feature pairs')
    return sorted(scores, key=lambda score: -score.accuracy)


_global_table: f.FeatureTable | None = None
_global_class_names: list[str] | None = None
_global_prime: bool = False
_global_splits: list[Split] | None = None


def _set_experiment(table: f.FeatureTable, class_names: list[str], prime: bool, splits: list[Split]) -> None:
    """ Sets global variables to be used in each process within a multiprocessing pool.

    :param table: The feature table to make available to each process.
    :param class_names: The class names.
    :param prime: Whether the diagonal vectors are used.
    :param splits: The splits every grid cell is scored on.
    """
    global _global_table
    global _global_class_names
    global _global_prime
    global _global_splits

    _global_table = table  # pragma: no cover
    _global_class_names = class_names  # pragma: no cover
    _global_prime = prime  # pragma: no cover
    _global_splits = splits  # pragma: no cover


def _get_grid_cell(projection: str, q: int) -> list[float]:
    return _grid_cell(
        table=_global_table, class_names=_global_class_names, projection=projection, q=q, prime=_global_prime,
        splits=_global_splits)  # pragma: no cover
