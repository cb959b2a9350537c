import math

import numpy as np

from ..core.dataset import NetworkDataset


def split_indices(n: int, frac: float = 0.6, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """
    Random disjoint, exhaustive subject split; ``floor(frac * n)`` go to training.

    :raises ValueError: If either side would hold fewer than 2 subjects.
    """
    if not 0.0 < frac < 1.0:
        raise ValueError(f"frac must lie in (0, 1), got {frac}")
    n_train = math.floor(frac * n)
    if n_train < 2 or n - n_train < 2:
        raise ValueError(f"a {frac:.2f} split of {n} subjects leaves fewer than 2 on one side")
    order = np.random.default_rng(seed).permutation(n)
    return np.sort(order[:n_train]), np.sort(order[n_train:])


def split_train_test(
        data: NetworkDataset,
        frac: float = 0.6,
        seed: int = 0
) -> tuple[NetworkDataset, NetworkDataset]:
    train, test = split_indices(data.n, frac, seed)
    return data.subset(train), data.subset(test)
