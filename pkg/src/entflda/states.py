"""Constructors for every state family used in the experiments.

Families are addressable by canonical name (``werner2``, ``werner3``,
``werner4``, ``concurrence``, ``pptes-acin``, ``ppt-alt``, ``biseparable``,
``product-sep``) through :func:`from_family`, which rebuilds a state from a
plain parameter dict. Random sampling lives in the experiment harness; the
constructors here are pure, except :func:`random_product_state` which takes
an explicit generator stream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qops import DensityOperator, kron, pauli_string_operator

FAMILY_NAMES = (
    "werner2",
    "werner3",
    "werner4",
    "concurrence",
    "pptes-acin",
    "ppt-alt",
    "biseparable",
    "product-sep",
)

# Correlation signs (s1, s2, s3) of <XX>, <YY>, <ZZ> for the four Bell
# states. Their product is always -1; no other pattern is realizable.
_BELL_SIGN_TABLE = {
    "phi+": (1, -1, 1),
    "phi-": (-1, 1, 1),
    "psi+": (1, 1, -1),
    "psi-": (-1, -1, -1),
}


@dataclass(frozen=True)
class BellSigns:
    """Diagonal correlation signs of a Bell state."""

    s1: int
    s2: int
    s3: int

    def __post_init__(self):
        if (self.s1, self.s2, self.s3) not in _BELL_SIGN_TABLE.values():
            raise ValueError(
                f"sign pattern {(self.s1, self.s2, self.s3)} does not match any Bell state; "
                f"allowed: {sorted(_BELL_SIGN_TABLE.values())}"
            )

    @classmethod
    def from_name(cls, name: str) -> "BellSigns":
        try:
            return cls(*_BELL_SIGN_TABLE[name])
        except KeyError:
            raise ValueError(f"unknown Bell state {name!r}; expected one of {sorted(_BELL_SIGN_TABLE)}") from None

    @classmethod
    def singlet(cls) -> "BellSigns":
        return cls(-1, -1, -1)


def werner2(p: float, signs: BellSigns | None = None) -> DensityOperator:
    """Two-qubit Werner state: Bell projector mixed with white noise.

    Built from its diagonal Pauli expansion, (1/4) (II + p s1 XX +
    p s2 YY + p s3 ZZ), which equals p |Bell><Bell| + (1-p) I/4 for the
    Bell state matching ``signs``. Valid mixing range is p in [-1/3, 1].
    """
    if signs is None:
        signs = BellSigns.singlet()
    if not (-1 / 3 - 1e-12 <= p <= 1 + 1e-12):
        raise ValueError(f"werner2 mixing parameter p={p} outside [-1/3, 1]")
    m = pauli_string_operator("II").astype(complex)
    for letter, s in zip("XYZ", (signs.s1, signs.s2, signs.s3)):
        m += p * s * pauli_string_operator(letter * 2)
    return DensityOperator(m / 4.0)


def ghz_state(n_qubits: int) -> DensityOperator:
    """Projector onto (|0...0> + |1...1>)/sqrt(2)."""
    dim = 2**n_qubits
    psi = np.zeros(dim, dtype=complex)
    psi[0] = psi[-1] = 1 / np.sqrt(2)
    return DensityOperator(np.outer(psi, psi.conj()))


def werner_ghz(n_qubits: int, p: float) -> DensityOperator:
    """n-qubit GHZ-based Werner state p |GHZ><GHZ| + (1-p) I / 2^n."""
    if n_qubits not in (3, 4):
        raise ValueError(f"werner_ghz supports 3 or 4 qubits, got {n_qubits}")
    if not (0 <= p <= 1):
        raise ValueError(f"werner_ghz mixing parameter p={p} outside [0, 1]")
    return depolarize(ghz_state(n_qubits), p)


def concurrence_state(theta0: float, theta1: float) -> DensityOperator:
    """Pure two-qubit state from the two-rotation preparation circuit.

    Amplitudes: cos(theta0/2) on |00>, -i sin(theta0/2) cos(theta1/2) on
    |10>, -i sin(theta0/2) sin(theta1/2) on |11>. Its concurrence is
    sin(theta0) sin(theta1/2).
    """
    if not (0 <= theta0 <= np.pi) or not (0 <= theta1 <= np.pi):
        raise ValueError(f"angles ({theta0}, {theta1}) outside [0, pi]")
    psi = np.array(
        [
            np.cos(theta0 / 2),
            0.0,
            -1j * np.sin(theta0 / 2) * np.cos(theta1 / 2),
            -1j * np.sin(theta0 / 2) * np.sin(theta1 / 2),
        ],
        dtype=complex,
    )
    return DensityOperator(np.outer(psi, psi.conj()))


def depolarize(rho: DensityOperator, p: float) -> DensityOperator:
    """Depolarizing channel with survival weight p: p rho + (1-p) I / 2^n."""
    if not (0 <= p <= 1):
        raise ValueError(f"depolarizing weight p={p} outside [0, 1]")
    eye = np.eye(rho.dim, dtype=complex) / rho.dim
    return DensityOperator(p * rho.matrix + (1 - p) * eye)


def pptes_acin(a: float, b: float, c: float) -> DensityOperator:
    """Three-qubit bound-entangled family: diagonal (1, a, b, c, 1/c, 1/b,
    1/a, 1) plus unit corner couplings, normalized by
    2 + a + 1/a + b + 1/b + c + 1/c. PPT across every bipartition for all
    positive parameters."""
    if a <= 0 or b <= 0 or c <= 0:
        raise ValueError(f"parameters must be positive, got a={a}, b={b}, c={c}")
    norm = 2 + a + 1 / a + b + 1 / b + c + 1 / c
    m = np.diag(np.array([1, a, b, c, 1 / c, 1 / b, 1 / a, 1], dtype=complex))
    m[0, 7] = m[7, 0] = 1.0
    return DensityOperator(m / norm)


def ppt_alternative() -> DensityOperator:
    """Three-qubit diagonal state (1/8)(III + IZZ + ZIZ + ZZI).

    Equals an equal mixture of |000> and |111|; PPT under every cut.
    """
    m = sum(pauli_string_operator(s) for s in ("III", "IZZ", "ZIZ", "ZZI"))
    return DensityOperator(m / 8.0)


@dataclass(frozen=True)
class MixtureSpec:
    """Convex mixture of tensor products over a fixed qubit partition.

    ``partition`` lists contiguous, ascending blocks of qubit indices that
    cover the register; each component supplies one factor state per block.
    """

    components: tuple  # ((weight, (DensityOperator, ...)), ...)
    partition: tuple  # ((qubit, ...), ...)

    def __post_init__(self):
        blocks = [tuple(b) for b in self.partition]
        flat = [q for b in blocks for q in b]
        if flat != list(range(len(flat))):
            raise ValueError(f"partition {blocks} must be contiguous ascending blocks covering the register")
        weights = [w for w, _ in self.components]
        if any(w < 0 for w in weights):
            raise ValueError("mixture weights must be nonnegative")
        if abs(sum(weights) - 1.0) > 1e-12:
            raise ValueError(f"mixture weights sum to {sum(weights)!r}, expected 1")
        for _, factors in self.components:
            if len(factors) != len(blocks):
                raise ValueError("each component needs one factor per partition block")
            for block, factor in zip(blocks, factors):
                if factor.num_qubits != len(block):
                    raise ValueError(
                        f"factor on block {block} has {factor.num_qubits} qubits, expected {len(block)}"
                    )


def separable_mixture(spec: MixtureSpec) -> DensityOperator:
    """Sum of weighted tensor products described by ``spec``."""
    total = None
    for weight, factors in spec.components:
        term = factors[0].matrix
        for factor in factors[1:]:
            term = kron(term, factor.matrix)
        term = weight * term
        total = term if total is None else total + term
    return DensityOperator(total)


def bloch_state(bloch: np.ndarray) -> DensityOperator:
    """Single-qubit state (1/2)(I + b . sigma) for a Bloch vector b."""
    b = np.asarray(bloch, dtype=float)
    if b.shape != (3,):
        raise ValueError(f"Bloch vector must have 3 components, got shape {b.shape}")
    r = float(np.linalg.norm(b))
    if r > 1 + 1e-12:
        raise ValueError(f"Bloch vector length {r} exceeds 1")
    m = np.eye(2, dtype=complex)
    for component, letter in zip(b, "XYZ"):
        m += component * pauli_string_operator(letter)
    return DensityOperator(m / 2.0)


def product_state(blochs) -> DensityOperator:
    """Tensor product of single-qubit Bloch states."""
    blochs = list(blochs)
    if not blochs:
        raise ValueError("need at least one Bloch vector")
    m = bloch_state(blochs[0]).matrix
    for b in blochs[1:]:
        m = kron(m, bloch_state(b).matrix)
    return DensityOperator(m)


def random_bloch_vector(rng: np.random.Generator, max_radius: float = 1.0) -> np.ndarray:
    """Vector distributed uniformly in the Bloch ball of radius ``max_radius``.

    Direction uniform on the sphere, radius u**(1/3) so the volume density
    is flat.
    """
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    radius = max_radius * rng.random() ** (1 / 3)
    return radius * direction


def random_product_state(n_qubits: int, rng: np.random.Generator, max_radius: float = 1.0) -> DensityOperator:
    """Product of ``n_qubits`` independent Bloch-ball-uniform qubit states."""
    if n_qubits < 1:
        raise ValueError("need at least one qubit")
    return product_state([random_bloch_vector(rng, max_radius) for _ in range(n_qubits)])


def family_qubits(family: str) -> int:
    """Register size used by a canonical family in the experiment tables."""
    sizes = {
        "werner2": 2,
        "werner3": 3,
        "werner4": 4,
        "concurrence": 2,
        "pptes-acin": 3,
        "ppt-alt": 3,
        "biseparable": 3,
        "product-sep": 2,
    }
    try:
        return sizes[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILY_NAMES}") from None


def from_family(family: str, params: dict) -> DensityOperator:
    """Rebuild a state from its canonical family name and parameter dict.

    The dict layout matches what the experiment samplers record: scalar
    parameters for the parametric families, explicit Bloch vectors and
    component weights for the random ones, so reconstruction is exact and
    rng-free.
    """
    if family == "werner2":
        return werner2(params["p"])
    if family in ("werner3", "werner4"):
        return werner_ghz(3 if family == "werner3" else 4, params["p"])
    if family == "concurrence":
        return concurrence_state(params["theta0"], params["theta1"])
    if family == "pptes-acin":
        return pptes_acin(params["a"], params["b"], params["c"])
    if family == "ppt-alt":
        return ppt_alternative()
    if family == "biseparable":
        parts = []
        for comp in params["components"]:
            bc = werner2(comp["bc_p"])
            parts.append((comp["weight"], (bloch_state(np.asarray(comp["a_bloch"])), bc)))
        spec = MixtureSpec(components=tuple(parts), partition=((0,), (1, 2)))
        return separable_mixture(spec)
    if family == "product-sep":
        components = params["components"]
        if len(components) == 1:
            return product_state([np.asarray(b) for b in components[0]["blochs"]])
        blocks = tuple((q,) for q in range(len(components[0]["blochs"])))
        parts = tuple(
            (comp["weight"], tuple(bloch_state(np.asarray(b)) for b in comp["blochs"]))
            for comp in components
        )
        return separable_mixture(MixtureSpec(components=parts, partition=blocks))
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILY_NAMES}")
