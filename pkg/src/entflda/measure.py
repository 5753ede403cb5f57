"""From states to classical feature vectors.

A feature vector collects Pauli-string expectation values, either exact
traces or finite-shot estimates. Every Pauli string has a +-1 spectrum, so
a shot outcome is a Bernoulli draw with P(+1) = (1 + <O>)/2; sampling the
binomial directly gives the same distribution as simulating projective
outcomes at a fraction of the cost.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .qops import DensityOperator, pauli_string_operator

STANDARDIZER_MODES = ("zscore", "minmax", "none")


class ObservableSet:
    """An ordered, duplicate-free list of non-identity Pauli words.

    Feature names serialize as the words themselves, most-significant qubit
    first (e.g. ``"XZI"``). Operator matrices are built lazily and cached as
    one stacked array for vectorized trace evaluation.
    """

    def __init__(self, num_qubits: int, strings):
        strings = tuple(strings)
        if not strings:
            raise ValueError("observable set is empty")
        seen = set()
        identity = "I" * num_qubits
        for s in strings:
            if len(s) != num_qubits or any(ch not in "IXYZ" for ch in s):
                raise ValueError(f"bad Pauli word {s!r} for {num_qubits} qubits")
            if s == identity:
                raise ValueError("identity string carries no information and is excluded")
            if s in seen:
                raise ValueError(f"duplicate Pauli word {s!r}")
            seen.add(s)
        self.num_qubits = num_qubits
        self.strings = strings
        self._stack = None

    @classmethod
    def full(cls, num_qubits: int) -> "ObservableSet":
        """All 4^N - 1 non-identity Pauli words in base-4 counting order."""
        words = ("".join(w) for w in product("IXYZ", repeat=num_qubits))
        return cls(num_qubits, (w for w in words if w != "I" * num_qubits))

    @classmethod
    def up_to_weight(cls, num_qubits: int, max_weight: int) -> "ObservableSet":
        """Non-identity words acting on at most ``max_weight`` qubits."""
        words = ("".join(w) for w in product("IXYZ", repeat=num_qubits))
        keep = (w for w in words if 0 < sum(ch != "I" for ch in w) <= max_weight)
        return cls(num_qubits, keep)

    def __len__(self) -> int:
        return len(self.strings)

    def operators(self) -> np.ndarray:
        """Stacked (n_obs, dim, dim) array of the observable matrices."""
        if self._stack is None:
            self._stack = np.stack([pauli_string_operator(s) for s in self.strings])
            self._stack.setflags(write=False)
        return self._stack


def exact_features(rho: DensityOperator, obs: ObservableSet) -> np.ndarray:
    """Exact expectation value per observable; entries lie in [-1, 1]."""
    if obs.num_qubits != rho.num_qubits:
        raise ValueError(f"observable set is for {obs.num_qubits} qubits, state has {rho.num_qubits}")
    return np.einsum("kij,ji->k", obs.operators(), rho.matrix).real


def sampled_features(
    rho: DensityOperator, obs: ObservableSet, shots: int, rng: np.random.Generator
) -> np.ndarray:
    """Mean of ``shots`` simulated +-1 outcomes per observable."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    exact = exact_features(rho, obs)
    p_plus = (1.0 + exact) / 2.0
    if np.any(p_plus < -1e-9) or np.any(p_plus > 1 + 1e-9):
        raise ValueError("outcome probability outside [0, 1]; upstream state is corrupted")
    p_plus = np.clip(p_plus, 0.0, 1.0)
    counts = rng.binomial(shots, p_plus)
    return 2.0 * counts / shots - 1.0


def reconstruct_density(values: np.ndarray, obs: ObservableSet) -> np.ndarray:
    """Invert a full feature vector back to the density matrix.

    (1/2^n)(I + sum_k x_k sigma_k); exact when ``obs`` is the complete
    non-identity set and ``values`` are exact expectations.
    """
    values = np.asarray(values, dtype=float)
    if values.shape != (len(obs),):
        raise ValueError(f"expected {len(obs)} feature values, got shape {values.shape}")
    dim = 2**obs.num_qubits
    m = np.eye(dim, dtype=complex)
    m += np.einsum("k,kij->ij", values, obs.operators())
    return m / dim


@dataclass(frozen=True)
class Standardizer:
    """Per-feature affine rescaling fit on training data only."""

    shift: np.ndarray
    scale: np.ndarray
    mode: str

    def to_dict(self) -> dict:
        return {"mode": self.mode, "shift": [float(v) for v in self.shift], "scale": [float(v) for v in self.scale]}

    @classmethod
    def from_dict(cls, d: dict) -> "Standardizer":
        return cls(shift=np.asarray(d["shift"], dtype=float), scale=np.asarray(d["scale"], dtype=float), mode=d["mode"])

    @classmethod
    def identity(cls, n_features: int) -> "Standardizer":
        return cls(shift=np.zeros(n_features), scale=np.ones(n_features), mode="none")


def fit_standardizer(train_values: np.ndarray, mode: str = "zscore") -> Standardizer:
    """Fit shift/scale statistics; zero-variance features get scale 1."""
    if mode not in STANDARDIZER_MODES:
        raise ValueError(f"unknown standardizer mode {mode!r}; expected one of {STANDARDIZER_MODES}")
    x = np.asarray(train_values, dtype=float)
    if x.ndim != 2 or x.shape[0] == 0:
        raise ValueError("training matrix must be 2-D and nonempty")
    if mode == "none":
        return Standardizer.identity(x.shape[1])
    if mode == "zscore":
        if x.shape[0] < 2:
            raise ValueError("zscore needs at least 2 training rows")
        shift = x.mean(axis=0)
        scale = x.std(axis=0)
    else:  # minmax
        shift = x.min(axis=0)
        scale = x.max(axis=0) - shift
    scale = np.where(scale <= 0.0, 1.0, scale)
    return Standardizer(shift=shift, scale=scale, mode=mode)


def apply_standardizer(standardizer: Standardizer, values: np.ndarray) -> np.ndarray:
    """(x - shift) / scale, for a single vector or a matrix of rows."""
    x = np.asarray(values, dtype=float)
    if x.shape[-1] != standardizer.shift.shape[0]:
        raise ValueError(
            f"feature dimension {x.shape[-1]} does not match standardizer ({standardizer.shift.shape[0]})"
        )
    return (x - standardizer.shift) / standardizer.scale
