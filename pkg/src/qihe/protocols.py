"""Multipartite protocols that move extractable work with quantum states.

Three families are implemented:

* point-to-point pair sharing (Bell pair versus its classically
  correlated counterpart, with an optional interceptor),
* GHZ broadcast unlocking, where one measurement plus a classical
  broadcast turns locked marginals into work for everyone else,
* even-parity sharing, whose security rests on a no-information
  theorem: operations on all but two qubits leave the first qubit
  exactly unpolarized.

Measurement branches in verification paths are enumerated exhaustively;
random sampling exists only for generating seeded test channels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
from scipy.stats import unitary_group

from .qcore import (
    DensityMatrix,
    ImpossibleEvidenceError,
    NullOutcomeError,
    PureState,
    QuantumChannel,
    ValidationError,
    _partial_trace_raw,
    apply_channel,
    basis_state,
    check_capacity,
    measure_computational,
    mixture,
    partial_trace,
    von_neumann_entropy,
)
from .thermo import ThermalContext, WorkReport, cycle_work, extractable_work

__all__ = [
    "Party",
    "ParityCheckReport",
    "ParityState",
    "ProtocolOutcome",
    "bell_pair",
    "bell_protocol",
    "classical_pair_protocol",
    "even_parity_state",
    "ghz_state",
    "ghz_unlock",
    "haar_random_channel",
    "parity_no_information_check",
    "parity_no_information_trials",
    "parity_unlock",
]

_BRANCH_TOL = 1e-12
_PURITY_TOL = 1e-10


@dataclass(frozen=True)
class Party:
    """A named participant and the subsystem indices it currently holds."""

    id: str
    held_subsystems: tuple[int, ...]


@dataclass(frozen=True)
class ProtocolOutcome:
    """Result of one protocol run.

    ``per_party_work`` maps party ids to their work reports,
    ``broadcast_log`` is the ordered classical record (one entry per
    simulated measurement branch when a protocol enumerates branches),
    and ``interceptor_work`` is present only for runs with an
    interceptor, computed from the interceptor's reduced state alone.
    """

    per_party_work: dict[str, WorkReport]
    broadcast_log: tuple[tuple[str, int], ...]
    interceptor_work: WorkReport | None = None
    parties: tuple[Party, ...] = ()

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for p in self.parties:
            overlap = seen.intersection(p.held_subsystems)
            if overlap:
                raise ValidationError(f"parties hold overlapping subsystems: {sorted(overlap)}")
            seen.update(p.held_subsystems)

    def to_dict(self) -> dict:
        """JSON-ready report: party ids, works in declared units, broadcast log."""

        def work_entry(wr: WorkReport) -> dict:
            return {
                "work": wr.work,
                "work_units": wr.units,
                "entropy_delta_bits": wr.entropy_delta,
                "entropy_delta_bits_units": "bit",
                "landauer_reset": wr.landauer_reset,
                "landauer_reset_units": wr.units,
            }

        return {
            "parties": {pid: work_entry(wr) for pid, wr in self.per_party_work.items()},
            "broadcast_log": [[pid, outcome] for pid, outcome in self.broadcast_log],
            "interceptor": None if self.interceptor_work is None
            else work_entry(self.interceptor_work),
        }


def bell_pair() -> PureState:
    """The two-qubit state ``(|00> + |11>)/sqrt(2)``."""
    amp = np.zeros(4, dtype=complex)
    amp[0] = amp[3] = 1.0 / math.sqrt(2.0)
    return PureState(amp, (2, 2))


def bell_protocol(ctx: ThermalContext, intercepted: bool = False) -> ProtocolOutcome:
    """Ship one half of a Bell pair from A to B and cash in the purity.

    Either marginal alone is maximally mixed and worth nothing, so an
    interceptor who grabs the flying qubit extracts zero work.  If the
    qubit arrives, B holds the reconstructed pure pair (dimension 4)
    and unlocks two bit-units, twice the classically correlated yield.
    """
    psi = bell_pair()
    rho = psi.density()
    flying = partial_trace(rho, (0,))
    work_a = extractable_work(flying, ctx)

    if intercepted:
        interceptor = extractable_work(flying, ctx)
        work_b = extractable_work(partial_trace(rho, (1,)), ctx)
        parties = (Party("A", ()), Party("B", (1,)))
        return ProtocolOutcome(
            per_party_work={"A": work_a, "B": work_b},
            broadcast_log=(),
            interceptor_work=interceptor,
            parties=parties,
        )

    work_b = extractable_work(psi, ctx)
    parties = (Party("A", ()), Party("B", (0, 1)))
    return ProtocolOutcome(
        per_party_work={"A": work_a, "B": work_b},
        broadcast_log=(),
        interceptor_work=None,
        parties=parties,
    )


def classical_pair_protocol(ctx: ThermalContext) -> ProtocolOutcome:
    """Classical benchmark: share a correlated random bit pair instead.

    The joint state is ``(|00><00| + |11><11|)/2`` with one bit of
    residual entropy, so after A's bit arrives B extracts exactly half
    of the Bell-pair yield.  A single held bit is worthless on its own.
    """
    pair = mixture([(0.5, basis_state(0, (2, 2))), (0.5, basis_state(3, (2, 2)))])
    work_a = extractable_work(partial_trace(pair, (0,)), ctx)
    work_b = extractable_work(pair, ctx)
    parties = (Party("A", ()), Party("B", (0, 1)))
    return ProtocolOutcome(
        per_party_work={"A": work_a, "B": work_b},
        broadcast_log=(),
        interceptor_work=None,
        parties=parties,
    )


def ghz_state(n: int, max_dim: int | None = None) -> PureState:
    """The n-qubit state ``(|0...0> + |1...1>)/sqrt(2)`` for ``n >= 2``."""
    if n < 2:
        raise ValidationError(f"a GHZ state needs at least 2 qubits, got {n}")
    check_capacity(2 ** n, max_dim)
    amp = np.zeros(2 ** n, dtype=complex)
    amp[0] = amp[-1] = 1.0 / math.sqrt(2.0)
    return PureState(amp, (2,) * n)


def _party_id(index: int) -> str:
    return f"A{index + 1}"


def ghz_unlock(
    n: int,
    initiator: int,
    ctx: ThermalContext,
    outcome: int | None = None,
) -> ProtocolOutcome:
    """One party measures its GHZ qubit and broadcasts; the rest cash in.

    Every single-party marginal of a GHZ state is maximally mixed, so
    nobody can extract anything alone.  After the initiator's
    computational measurement and classical broadcast, each remaining
    party's qubit is conditioned to a pure basis state worth one
    bit-unit, for ``n - 1`` bit-units total.  The initiator's own gain
    is cancelled by the Landauer reset of its measurement record.

    With ``outcome`` unset, both measurement branches are simulated
    exhaustively (no random sampling) and verified to pay out
    identically; the broadcast log then carries one entry per branch.
    """
    if not 0 <= initiator < n:
        raise ValidationError(f"initiator index {initiator} out of range for {n} parties")
    rho = ghz_state(n).density()
    records = measure_computational(rho, initiator)
    branches = [outcome] if outcome is not None else [0, 1]
    if outcome is not None and outcome not in (0, 1):
        raise ValidationError(f"measurement outcome must be 0 or 1, got {outcome}")

    remote = [i for i in range(n) if i != initiator]
    branch_works: list[dict[int, WorkReport]] = []
    for b in branches:
        rec = records[b]
        if abs(rec.probability - 0.5) > _BRANCH_TOL:
            raise ValidationError(
                f"GHZ branch probability {rec.probability} deviates from 1/2"
            )
        post = rec.post_state
        assert post is not None
        purity = von_neumann_entropy(post)
        if purity > _PURITY_TOL:
            raise ValidationError(
                f"conditioned GHZ remainder is not pure: entropy {purity:.3e} bits"
            )
        works = {}
        for i in remote:
            pos = i if i < initiator else i - 1
            works[i] = extractable_work(partial_trace(post, (pos,)), ctx)
        branch_works.append(works)

    if len(branch_works) == 2:
        for i in remote:
            if abs(branch_works[0][i].work - branch_works[1][i].work) > _BRANCH_TOL:
                raise ValidationError(f"branch payouts differ for party {_party_id(i)}")

    per_party = {_party_id(initiator): cycle_work(0.0, ctx)}
    for i in remote:
        per_party[_party_id(i)] = branch_works[0][i]
    log = tuple((_party_id(initiator), b) for b in branches)
    parties = tuple(Party(_party_id(i), (i,)) for i in range(n))
    return ProtocolOutcome(per_party_work=per_party, broadcast_log=log, parties=parties)


@dataclass(frozen=True)
class ParityState:
    """Uniform mixture over all even-parity computational basis strings.

    The density matrix is diagonal with weight ``2**(1-n)`` on each of
    the ``2**(n-1)`` strings of even Hamming weight and zero elsewhere;
    that structure is validated at construction.
    """

    n: int
    rho: DensityMatrix

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValidationError(f"an even-parity state needs n >= 2 qubits, got {self.n}")
        d = 2 ** self.n
        if self.rho.dims != (2,) * self.n:
            raise ValidationError(
                f"state signature {self.rho.dims} is not {self.n} qubits"
            )
        data = self.rho.data
        off = data - np.diag(np.diag(data))
        worst_off = float(np.max(np.abs(off)))
        if worst_off > _BRANCH_TOL:
            raise ValidationError(
                f"even-parity state must be diagonal: off-diagonal magnitude {worst_off:.3e}"
            )
        want = 2.0 ** (1 - self.n)
        for idx in range(d):
            val = float(np.real(data[idx, idx]))
            expect = want if bin(idx).count("1") % 2 == 0 else 0.0
            if abs(val - expect) > _BRANCH_TOL:
                raise ValidationError(
                    f"diagonal entry {idx} is {val}, expected {expect} "
                    f"(parity {'even' if expect else 'odd'})"
                )


def even_parity_state(n: int, max_dim: int | None = None) -> ParityState:
    """Build the n-qubit even-parity mixture."""
    if n < 2:
        raise ValidationError(f"an even-parity state needs n >= 2 qubits, got {n}")
    check_capacity(2 ** n, max_dim)
    diag = np.zeros(2 ** n)
    weight = 2.0 ** (1 - n)
    for idx in range(2 ** n):
        if bin(idx).count("1") % 2 == 0:
            diag[idx] = weight
    return ParityState(n, DensityMatrix(np.diag(diag).astype(complex), (2,) * n))


def haar_random_channel(
    dim: int,
    n_kraus: int,
    rng: np.random.Generator,
    target: tuple[int, ...],
) -> QuantumChannel:
    """Seeded random trace-preserving channel on a ``dim``-dimensional block.

    A Haar-random unitary of size ``n_kraus * dim`` is drawn, its first
    ``dim`` columns form a random isometry, and the isometry is cut into
    ``n_kraus`` stacked blocks which serve as Kraus operators.  Their
    completeness relation is inherited from the isometry.
    """
    if dim < 1 or n_kraus < 1:
        raise ValidationError(f"need dim >= 1 and n_kraus >= 1, got {dim}, {n_kraus}")
    big = unitary_group.rvs(dim * n_kraus, random_state=rng) if dim * n_kraus > 1 \
        else np.ones((1, 1), dtype=complex)
    isometry = big[:, :dim]
    kraus = tuple(isometry[j * dim:(j + 1) * dim, :] for j in range(n_kraus))
    return QuantumChannel(kraus, target)


@dataclass(frozen=True)
class ParityCheckReport:
    """Numerical certificate for the even-parity no-information theorem.

    ``c_even`` and ``c_odd`` are the parity-resolved Kraus weights
    (independent double sums over matrix elements); the deviations
    compare the actual reduced states against the structure those
    weights predict: the normalized first-qubit state must equal
    ``I/2`` and the first-two-qubit block must be the even/odd diagonal
    combination scaled by ``2**(1-n)``.
    """

    n: int
    c_even: float
    c_odd: float
    rho1_deviation: float
    rho12_deviation: float
    branch_weight: float


def parity_no_information_check(n: int, ch: QuantumChannel) -> ParityCheckReport:
    """Verify that attacking qubits 2..n-1 of the parity state reveals nothing.

    ``ch`` must target exactly the last ``n - 2`` qubits (indices
    ``2..n-1``); touching the first two is an argument error, since the
    theorem is about what the *other* parties can do.  Works for any
    Kraus map, including selective (trace-non-increasing) branches.
    """
    if n < 3:
        raise ValidationError(f"the no-information check needs n >= 3, got {n}")
    expected_target = tuple(range(2, n))
    if ch.target != expected_target:
        raise ValidationError(
            f"channel must act on qubits {expected_target} only, got target {ch.target}"
        )
    block = 2 ** (n - 2)
    if ch.input_dim != block or ch.output_dim != block:
        raise ValidationError(
            f"channel must be a square map on dimension {block}, "
            f"got {ch.output_dim} x {ch.input_dim}"
        )

    state = even_parity_state(n)
    out, norm = apply_channel(state.rho, ch)
    unnorm = out.data * norm
    dims = (2,) * n

    c_even = 0.0
    c_odd = 0.0
    for k in ch.kraus:
        mags = np.abs(k) ** 2
        for i in range(block):
            col = float(np.sum(mags[:, i]))
            if bin(i).count("1") % 2 == 0:
                c_even += col
            else:
                c_odd += col

    scale = 2.0 ** (1 - n)
    predicted12 = scale * np.diag(
        [c_even, c_odd, c_odd, c_even]
    ).astype(complex)
    rho12 = _partial_trace_raw(unnorm, dims, [0, 1])
    dev12 = float(np.max(np.abs(rho12 - predicted12)))

    rho1 = _partial_trace_raw(unnorm, dims, [0])
    weight = float(np.real(np.trace(rho1)))
    if weight < 1e-14:
        raise NullOutcomeError("channel branch annihilated the parity state")
    dev1 = float(np.max(np.abs(rho1 / weight - np.eye(2) / 2.0)))

    return ParityCheckReport(
        n=n,
        c_even=c_even,
        c_odd=c_odd,
        rho1_deviation=dev1,
        rho12_deviation=dev12,
        branch_weight=weight,
    )


def parity_no_information_trials(
    n: int,
    trials: int,
    seed: int = 0,
    max_kraus: int = 4,
) -> list[ParityCheckReport]:
    """Run the no-information check against seeded Haar-random channels."""
    if trials < 1:
        raise ValidationError(f"need at least one trial, got {trials}")
    rng = np.random.default_rng(seed)
    block = 2 ** (n - 2)
    reports = []
    for _ in range(trials):
        n_kraus = int(rng.integers(1, max_kraus + 1))
        ch = haar_random_channel(block, n_kraus, rng, tuple(range(2, n)))
        reports.append(parity_no_information_check(n, ch))
    return reports


def parity_unlock(
    n: int,
    revealed: Mapping[int, int],
    ctx: ThermalContext,
) -> ProtocolOutcome:
    """Condition the even-parity state on broadcast measurement outcomes.

    ``revealed`` maps qubit indices to announced outcomes.  With
    ``n - 1`` of the ``n`` bits revealed, the remaining qubit is fully
    determined by parity and its holder extracts one bit-unit; with
    fewer revelations every unrevealed marginal stays maximally mixed
    and nothing is unlocked.  Announcing an outcome combination of
    probability zero (only possible when all ``n`` bits are claimed
    with odd parity) raises :class:`ImpossibleEvidenceError`.
    """
    if n < 2:
        raise ValidationError(f"the parity protocol needs n >= 2 qubits, got {n}")
    outcomes = {int(q): int(b) for q, b in revealed.items()}
    if len(outcomes) != len(revealed):
        raise ValidationError("revealed qubit indices must be distinct")
    for q, b in outcomes.items():
        if not 0 <= q < n:
            raise ValidationError(f"revealed qubit index {q} out of range for n = {n}")
        if b not in (0, 1):
            raise ValidationError(f"revealed outcome for qubit {q} must be 0 or 1, got {b}")

    state: DensityMatrix | None = even_parity_state(n).rho
    for q in sorted(outcomes, reverse=True):
        if state is None:
            raise ValidationError("no subsystems left to condition on")
        recs = measure_computational(state, q)
        rec = recs[outcomes[q]]
        if rec.probability < 1e-12:
            raise ImpossibleEvidenceError(
                f"outcome combination has probability {rec.probability:.3e}; "
                f"qubit {q} cannot read {outcomes[q]} given the other announcements"
            )
        state = rec.post_state

    remaining = [i for i in range(n) if i not in outcomes]
    per_party: dict[str, WorkReport] = {}
    for q in sorted(outcomes):
        per_party[_party_id(q)] = cycle_work(0.0, ctx)
    for pos, i in enumerate(remaining):
        assert state is not None
        marginal = partial_trace(state, (pos,))
        per_party[_party_id(i)] = extractable_work(marginal, ctx)

    log = tuple((_party_id(q), outcomes[q]) for q in sorted(outcomes))
    parties = tuple(Party(_party_id(i), (i,)) for i in range(n))
    return ProtocolOutcome(per_party_work=per_party, broadcast_log=log, parties=parties)
