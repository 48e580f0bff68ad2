"""Communication/work tradeoffs and typical-subspace refactorization.

A memoryless source emits letters ``rho_a`` with probabilities ``p_a``
on a ``d``-dimensional carrier.  Three linked quantities share the
carrier's capacity ``M = log2 d`` bits per letter:

* extractable energy ``E = M - S(rho_B)`` (bit-units per letter),
* accessible communication, bounded by the Holevo quantity
  ``chi = S(rho_B) - <S_a>``,
* the average letter entropy ``<S_a>`` itself.

The bookkeeping identity ``E + chi + <S_a> = M`` is enforced wherever
these numbers are produced together.

For long blocks the receiver can concentrate the source onto its
typical subspace, swap the typical content into a compact ancilla with
a permutation-style unitary, and run the emptied carriers through the
engine.  :func:`typical_subspace` supports a dense spectral route
(explicit projector) and a combinatorial route for diagonal sources
(binomial/multinomial sums, no large matrices), and
:func:`refactorization_ledger` turns capture statistics into a net
work-per-letter bracket.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .qcore import (
    DensityMatrix,
    ValidationError,
    basis_state,
    check_capacity,
    entropy_from_eigenvalues,
    matrix_from_pairs,
    matrix_to_pairs,
    max_dimension,
    mixture,
    tensor_power,
    von_neumann_entropy,
)
from .thermo import ThermalContext, extractable_work, unit_factor

__all__ = [
    "Alphabet",
    "RefactorizationLedger",
    "RefactorizationUnitary",
    "TradeoffPoint",
    "TypicalSubspace",
    "block_alphabet",
    "ensemble_state",
    "holevo_chi",
    "load_alphabet",
    "orthogonal_pure_alphabet",
    "qubit_capture_curve",
    "refactorization_ledger",
    "refactorization_unitary",
    "save_alphabet",
    "tradeoff_curve",
    "tradeoff_point",
    "typical_subspace",
    "zero_plus_alphabet",
]

_IDENTITY_TOL = 1e-12
_CHI_TOL = 1e-10
_PROJECTOR_TOL = 1e-9
_DIAGONAL_TOL = 1e-12


@dataclass(frozen=True)
class Alphabet:
    """A finite quantum source: letter states plus emission probabilities."""

    letters: tuple[DensityMatrix, ...]
    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        letters = tuple(self.letters)
        probs = tuple(float(p) for p in self.probs)
        if not letters:
            raise ValidationError("an alphabet needs at least one letter")
        if len(letters) != len(probs):
            raise ValidationError(
                f"{len(letters)} letters but {len(probs)} probabilities"
            )
        if any(p < -1e-12 for p in probs):
            raise ValidationError(f"letter probabilities must be non-negative: {probs}")
        total = sum(probs)
        if abs(total - 1.0) > 1e-10:
            raise ValidationError(
                f"letter probabilities must sum to 1: |sum - 1| = {abs(total - 1.0):.3e}"
            )
        d = letters[0].dim
        if any(let.dim != d for let in letters):
            raise ValidationError("all letters must share one carrier dimension")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "probs", probs)

    @property
    def d(self) -> int:
        """Carrier dimension of each letter."""
        return self.letters[0].dim

    @property
    def capacity_bits(self) -> float:
        return math.log2(self.d)

    def to_dict(self) -> dict:
        return {
            "dims": self.d,
            "letters": [matrix_to_pairs(let.data) for let in self.letters],
            "probs": list(self.probs),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "Alphabet":
        d = int(obj["dims"])
        letters = []
        for entry in obj["letters"]:
            m = matrix_from_pairs(entry)
            if m.shape != (d, d):
                raise ValidationError(
                    f"letter matrix has shape {m.shape}, expected ({d}, {d})"
                )
            letters.append(DensityMatrix(m, (d,)))
        return cls(tuple(letters), tuple(float(p) for p in obj["probs"]))


def load_alphabet(path: str) -> Alphabet:
    """Read an alphabet from its JSON file format."""
    with open(path, "r", encoding="utf-8") as fh:
        return Alphabet.from_dict(json.load(fh))


def save_alphabet(alphabet: Alphabet, path: str) -> None:
    """Write an alphabet in the JSON file format read by :func:`load_alphabet`."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(alphabet.to_dict(), fh, indent=2)
        fh.write("\n")


def orthogonal_pure_alphabet(d: int = 2) -> Alphabet:
    """Uniform alphabet of the ``d`` computational basis states."""
    letters = tuple(basis_state(i, d).density() for i in range(d))
    return Alphabet(letters, (1.0 / d,) * d)


def zero_plus_alphabet() -> Alphabet:
    """The non-orthogonal benchmark alphabet ``{|0>, |+>}`` with equal odds."""
    zero = basis_state(0, 2).density()
    plus_amp = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)
    plus = DensityMatrix(np.outer(plus_amp, plus_amp.conj()), (2,))
    return Alphabet((zero, plus), (0.5, 0.5))


def ensemble_state(alphabet: Alphabet) -> DensityMatrix:
    """Average emitted state ``rho_B = sum_a p_a rho_a``."""
    return mixture(list(zip(alphabet.probs, alphabet.letters)))


def letter_entropies(alphabet: Alphabet) -> list[float]:
    """Von Neumann entropy of each letter, in bits."""
    return [von_neumann_entropy(let) for let in alphabet.letters]


def holevo_chi(alphabet: Alphabet) -> float:
    """Holevo bound ``chi = S(rho_B) - sum_a p_a S(rho_a)`` in bits."""
    s_b = von_neumann_entropy(ensemble_state(alphabet))
    avg = sum(p * s for p, s in zip(alphabet.probs, letter_entropies(alphabet)))
    chi = s_b - avg
    if chi < -_CHI_TOL:
        raise ValidationError(
            f"Holevo quantity came out negative ({chi:.3e}); concavity is violated "
            "beyond numerical tolerance"
        )
    return chi


@dataclass(frozen=True)
class TradeoffPoint:
    """One operating point of the energy/communication budget, in bits.

    The fields satisfy ``energy_bits + comm_bits + avg_letter_entropy =
    capacity_bits``: whatever the messages do not use, and the letters
    do not waste as mixedness, is extractable as work.
    """

    energy_bits: float
    comm_bits: float
    avg_letter_entropy: float
    capacity_bits: float

    def __post_init__(self) -> None:
        residual = (self.energy_bits + self.comm_bits
                    + self.avg_letter_entropy - self.capacity_bits)
        if abs(residual) > _IDENTITY_TOL:
            raise ValidationError(
                f"budget identity violated: E + C + <S_a> - M = {residual:.3e} "
                f"exceeds {_IDENTITY_TOL:.0e}"
            )


def tradeoff_point(alphabet: Alphabet, ctx: ThermalContext) -> TradeoffPoint:
    """Operating point with the full Holevo communication switched on."""
    rho_b = ensemble_state(alphabet)
    energy = extractable_work(rho_b, ctx).entropy_delta
    s_b = von_neumann_entropy(rho_b)
    avg = sum(p * s for p, s in zip(alphabet.probs, letter_entropies(alphabet)))
    chi = s_b - avg
    return TradeoffPoint(
        energy_bits=energy,
        comm_bits=chi,
        avg_letter_entropy=avg,
        capacity_bits=alphabet.capacity_bits,
    )


def tradeoff_curve(
    alphabet: Alphabet, ctx: ThermalContext
) -> tuple[tuple[float, float], tuple[float, float]]:
    """Endpoints ``(C, E)`` of the linear communication/energy tradeoff.

    Returns the full-communication point ``(chi, M - S(rho_B))`` and the
    all-energy point ``(0, M - <S_a>)``; intermediate operation is the
    straight line between them.
    """
    point = tradeoff_point(alphabet, ctx)
    full_comm = (point.comm_bits, point.energy_bits)
    all_energy = (0.0, point.capacity_bits - point.avg_letter_entropy)
    return full_comm, all_energy


def block_alphabet(alphabet: Alphabet, n: int, max_dim: int | None = None) -> Alphabet:
    """Treat ``n``-letter blocks as super-letters ``rho_a^(x n)``.

    Blocking multiplies both letter entropies and capacity by ``n``
    (verified numerically) while the Holevo quantity grows strictly
    sublinearly for non-orthogonal letters, which is what pushes the
    per-letter energy toward its ``M - <S_a>`` ceiling.
    """
    if n < 1:
        raise ValidationError(f"block length must be at least 1, got {n}")
    check_capacity(alphabet.d ** n, max_dim)
    blocked = []
    for let, s_single in zip(alphabet.letters, letter_entropies(alphabet)):
        power = tensor_power(let, n, max_dim)
        s_block = von_neumann_entropy(power)
        if abs(s_block - n * s_single) > 1e-9:
            raise ValidationError(
                f"blocked letter entropy {s_block} deviates from n * S = {n * s_single}"
            )
        blocked.append(power)
    out = Alphabet(tuple(blocked), alphabet.probs)
    if abs(out.capacity_bits - n * alphabet.capacity_bits) > 1e-12:
        raise ValidationError("blocked capacity is not n times the letter capacity")
    return out


def _compositions(total: int, parts: int):
    """All tuples of ``parts`` non-negative integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _multinomial(total: int, counts: Sequence[int]) -> int:
    out = 1
    rem = total
    for m in counts:
        out *= math.comb(rem, m)
        rem -= m
    return out


def _class_weight_log2(counts: Sequence[int], evals: Sequence[float]) -> float | None:
    """Base-2 log of the eigenvalue product for a type class.

    Returns ``None`` when the class puts weight on a zero (or clamped
    negative) eigenvalue, i.e. the product is exactly zero and the class
    can never be typical.
    """
    w = 0.0
    for m, lam in zip(counts, evals):
        if m == 0:
            continue
        if lam <= 0.0:
            return None
        w += m * math.log2(lam)
    return w


@dataclass(frozen=True)
class TypicalSubspace:
    """The delta-typical subspace of ``rho_B^(x L)``.

    ``dim`` counts the retained eigenvectors (an exact integer),
    ``capture_probability`` is ``tr(Pi rho_B^(x L))``, and
    ``source_entropy`` is ``S(rho_B)`` in bits.  ``projector`` and
    ``basis`` are materialized only on the dense route; the
    combinatorial route leaves them ``None`` so that block lengths far
    beyond the dense cap stay reachable for diagonal sources.
    """

    L: int
    delta: float
    dim: int
    capture_probability: float
    source_entropy: float
    projector: np.ndarray | None = None
    basis: np.ndarray | None = None

    def __post_init__(self) -> None:
        if not (-1e-12 <= self.capture_probability <= 1.0 + 1e-12):
            raise ValidationError(
                f"capture probability {self.capture_probability} is outside [0, 1]"
            )
        if self.dim > 0:
            bound = self.L * (self.source_entropy + self.delta)
            if math.log2(self.dim) > bound:
                raise ValidationError(
                    f"dimension bound violated: log2(dim) = {math.log2(self.dim)} "
                    f"exceeds L(S + delta) = {bound}"
                )
        if self.projector is not None:
            p = self.projector
            idem = float(np.max(np.abs(p @ p - p)))
            if idem > _PROJECTOR_TOL:
                raise ValidationError(
                    f"projector is not idempotent: max |P^2 - P| = {idem:.3e}"
                )
            tr = float(np.real(np.trace(p)))
            if abs(tr - self.dim) > 0.5:
                raise ValidationError(
                    f"projector trace {tr} disagrees with counted dimension {self.dim}"
                )


def _typical_window(evals: np.ndarray, L: int, delta: float) -> tuple[float, float, float]:
    entropy = entropy_from_eigenvalues(evals)
    return entropy, -L * (entropy + delta), -L * (entropy - delta)


def _combinatorial_census(
    evals: np.ndarray, L: int, delta: float
) -> tuple[int, float, float]:
    """Count typical eigenvectors and their captured probability by type class."""
    entropy, lo, hi = _typical_window(evals, L, delta)
    dim = 0
    capture = 0.0
    lams = [float(x) for x in np.real(evals)]
    for counts in _compositions(L, len(lams)):
        w = _class_weight_log2(counts, lams)
        if w is None or not lo <= w <= hi:
            continue
        mult = _multinomial(L, counts)
        dim += mult
        if mult.bit_length() < 1000:
            term = float(mult)
            for m, lam in zip(counts, lams):
                if m:
                    term *= lam ** m
        else:
            term = 2.0 ** (math.log2(mult) + w)
        capture += term
    return dim, capture, entropy


def typical_subspace(
    rho_b: DensityMatrix,
    L: int,
    delta: float,
    method: str = "auto",
    max_dim: int | None = None,
) -> TypicalSubspace:
    """Project ``rho_B^(x L)`` onto eigenvalues within ``2**(-L(S +/- delta))``.

    ``method`` selects the route:

    * ``"dense"`` diagonalizes the single-letter state, builds the
      eigenvector tensor basis explicitly and returns the projector;
      requires ``d**L`` within the dense cap.
    * ``"diagonal"`` reads the spectrum off a diagonal ``rho_b`` and
      runs the binomial/multinomial census only; no large matrices, so
      very long blocks are fine.
    * ``"auto"`` prefers dense when it fits, else falls back to the
      diagonal route when the source allows it.

    Both routes classify type classes with identical arithmetic, so
    their capture probabilities agree to float precision.
    """
    if L < 1:
        raise ValidationError(f"block length must be at least 1, got {L}")
    if not (delta > 0 and math.isfinite(delta)):
        raise ValidationError(f"delta must be positive and finite, got {delta}")
    if method not in ("auto", "dense", "diagonal"):
        raise ValidationError(f"unknown method {method!r}")

    d = rho_b.dim
    total = d ** L
    fits_dense = total <= max_dimension(max_dim)

    off_diag = float(np.max(np.abs(rho_b.data - np.diag(np.diag(rho_b.data))))) \
        if d > 1 else 0.0
    is_diagonal = off_diag <= _DIAGONAL_TOL

    if method == "auto":
        method = "dense" if fits_dense else "diagonal"
    if method == "diagonal" and not is_diagonal:
        raise ValidationError(
            f"the diagonal route requires a diagonal source state "
            f"(max off-diagonal magnitude {off_diag:.3e})"
        )
    if method == "dense":
        check_capacity(total, max_dim)

    if method == "diagonal":
        evals = np.real(np.diag(rho_b.data)).copy()
        evals[(evals < 0) & (evals >= -1e-10)] = 0.0
        dim, capture, entropy = _combinatorial_census(evals, L, delta)
        return TypicalSubspace(
            L=L, delta=delta, dim=dim,
            capture_probability=min(max(capture, 0.0), 1.0),
            source_entropy=entropy,
        )

    evals, evecs = np.linalg.eigh(rho_b.data)
    entropy, lo, hi = _typical_window(evals, L, delta)
    lams = [float(x) for x in np.real(evals)]

    cols = []
    for j in range(total):
        counts = [0] * d
        idx = j
        for _ in range(L):
            counts[idx % d] += 1
            idx //= d
        w = _class_weight_log2(counts, lams)
        if w is not None and lo <= w <= hi:
            cols.append(j)

    big_v = np.ones((1, 1), dtype=complex)
    big_rho = np.ones((1, 1), dtype=complex)
    for _ in range(L):
        big_v = np.kron(big_v, evecs)
        big_rho = np.kron(big_rho, rho_b.data)
    basis = np.ascontiguousarray(big_v[:, cols]) if cols else np.zeros((total, 0), complex)
    projector = basis @ basis.conj().T
    capture = float(np.real(np.einsum("ij,ji->", projector, big_rho)))
    return TypicalSubspace(
        L=L, delta=delta, dim=len(cols),
        capture_probability=min(max(capture, 0.0), 1.0),
        source_entropy=entropy,
        projector=projector,
        basis=basis,
    )


def qubit_capture_curve(
    p: float, lengths: Sequence[int], delta: float
) -> list[tuple[int, float]]:
    """Capture probabilities of ``diag(p, 1-p)`` sources over long blocks.

    Uses log-domain binomial sums throughout, so block lengths up to
    around a million are fine; intended for plotting capture curves.
    """
    if not 0.0 < p < 1.0:
        raise ValidationError(f"p must lie strictly between 0 and 1, got {p}")
    evals = np.array([p, 1.0 - p])
    out = []
    for L in lengths:
        if L < 1:
            raise ValidationError(f"block lengths must be positive, got {L}")
        entropy, lo, hi = _typical_window(evals, int(L), delta)
        capture = 0.0
        lp, lq = math.log2(p), math.log2(1.0 - p)
        for k in range(int(L) + 1):
            w = (L - k) * lp + k * lq
            if lo <= w <= hi:
                log_c = (math.lgamma(L + 1) - math.lgamma(k + 1)
                         - math.lgamma(L - k + 1)) / math.log(2.0)
                capture += 2.0 ** (log_c + w)
        out.append((int(L), min(capture, 1.0)))
    return out


@dataclass(frozen=True)
class RefactorizationLedger:
    """Energy audit of typical-subspace refactorization over an ``L``-block.

    On success (probability ``1 - epsilon``) the emptied carriers yield
    ``w1 = k_B T ln2 L M``; a failed projection is billed at the worst
    case ``-w1``.  Resetting the ancilla that swallowed the typical
    content costs ``w_ancilla = k_B T ln2 log2(dim)``.  The resulting
    ``net_per_letter`` is guaranteed to sit between ``lower_bound``
    (finite-block, measured epsilon) and ``upper_bound`` (the asymptotic
    ceiling ``k_B T ln2 (M - S(rho_B))``).
    """

    w1: float
    w_ancilla: float
    net_per_letter: float
    lower_bound: float
    upper_bound: float
    epsilon: float
    success_probability: float
    units: str = "bit-unit"
    subspace: TypicalSubspace | None = None

    def __post_init__(self) -> None:
        if not -1e-12 <= self.epsilon <= 1.0 + 1e-12:
            raise ValidationError(f"epsilon {self.epsilon} is outside [0, 1]")
        if self.net_per_letter > self.upper_bound + 1e-12:
            raise ValidationError(
                f"net work {self.net_per_letter} exceeds the asymptotic ceiling "
                f"{self.upper_bound}"
            )
        if self.net_per_letter < self.lower_bound - 1e-12:
            raise ValidationError(
                f"net work {self.net_per_letter} fell below the guaranteed floor "
                f"{self.lower_bound}"
            )


def refactorization_ledger(
    alphabet: Alphabet,
    L: int,
    delta: float,
    ctx: ThermalContext,
    method: str = "auto",
    max_dim: int | None = None,
) -> RefactorizationLedger:
    """Audit the engine yield of refactorizing ``L`` source letters.

    ``epsilon`` is measured as ``1 - tr(Pi rho_B^(x L))`` for the
    requested block, not taken from an asymptotic promise, and the
    bounds are reported for that measured value.  The swap unitary is
    accounted for by dimension and probability only; see
    :func:`refactorization_unitary` for the explicit small-block check.
    """
    rho_b = ensemble_state(alphabet)
    sub = typical_subspace(rho_b, L, delta, method=method, max_dim=max_dim)
    if sub.dim < 1:
        raise ValidationError(
            "typical subspace is empty; widen delta or lengthen the block"
        )
    uf = unit_factor(ctx)
    m_bits = alphabet.capacity_bits
    s_b = sub.source_entropy
    eps = min(max(1.0 - sub.capture_probability, 0.0), 1.0)

    w1 = uf * L * m_bits
    w_ancilla = uf * math.log2(sub.dim)
    net = (w1 * (1.0 - 2.0 * eps) - w_ancilla) / L
    lower = uf * (m_bits * (1.0 - 2.0 * eps) - s_b - delta)
    upper = uf * (m_bits - s_b)
    return RefactorizationLedger(
        w1=w1,
        w_ancilla=w_ancilla,
        net_per_letter=net,
        lower_bound=lower,
        upper_bound=upper,
        epsilon=eps,
        success_probability=sub.capture_probability,
        units=ctx.energy_unit,
        subspace=sub,
    )


@dataclass(frozen=True)
class RefactorizationUnitary:
    """Explicit swap unitary for small blocks, with its verification data.

    ``matrix`` acts on carrier block (x) ancilla; it sends the basis
    ``t_i (x) |0>_D`` of the loaded subspace onto ``|0>_L (x) |i>_D``,
    emptying the carriers into the ancilla.  The residuals record how
    far the construction is from exact unitarity and exact mapping.
    """

    matrix: np.ndarray
    gamma_basis: np.ndarray
    unitarity_residual: float
    mapping_residual: float


def _complete_orthonormal(cols: np.ndarray) -> np.ndarray:
    """Extend orthonormal columns to a full orthonormal basis.

    Deterministic: candidate vectors are the standard basis in order,
    orthogonalized (twice, for stability) against everything accepted so
    far.  The input columns are kept verbatim as the leading columns.
    """
    total, k = cols.shape
    basis = [np.array(cols[:, i]) for i in range(k)]
    for cand_idx in range(total):
        if len(basis) == total:
            break
        v = np.zeros(total, dtype=complex)
        v[cand_idx] = 1.0
        for _ in range(2):
            for b in basis:
                v = v - b * np.vdot(b, v)
        norm = float(np.linalg.norm(v))
        if norm > 1e-7:
            basis.append(v / norm)
    if len(basis) != total:
        raise ValidationError("failed to complete an orthonormal basis")
    return np.column_stack(basis)


def refactorization_unitary(
    sub: TypicalSubspace, max_dim: int | None = None
) -> RefactorizationUnitary:
    """Materialize and verify the swap unitary for a dense-route subspace.

    Only sensible for small blocks: the unitary lives on the product of
    the full carrier block and the ancilla, so its dimension is
    ``d**L * dim``.  Raises if the subspace came from the combinatorial
    route (no eigenvector basis available).
    """
    if sub.basis is None:
        raise ValidationError(
            "explicit construction needs the dense route; rebuild the subspace "
            "with method='dense'"
        )
    if sub.dim < 1:
        raise ValidationError("cannot build a swap unitary for an empty subspace")
    d_block, d_anc = sub.basis.shape
    total = d_block * d_anc
    check_capacity(total, max_dim)

    e0 = np.zeros((d_anc, 1), dtype=complex)
    e0[0, 0] = 1.0
    gamma = np.kron(sub.basis, e0)  # columns t_i (x) |0>_D
    full = _complete_orthonormal(gamma)
    u = full.conj().T

    target = np.zeros((total, d_anc), dtype=complex)
    for i in range(d_anc):
        target[i, i] = 1.0  # |0>_L (x) |i>_D in product ordering
    mapping = float(np.max(np.abs(u @ gamma - target)))
    unitarity = float(np.max(np.abs(u @ u.conj().T - np.eye(total))))
    return RefactorizationUnitary(
        matrix=u,
        gamma_basis=gamma,
        unitarity_residual=unitarity,
        mapping_residual=mapping,
    )
