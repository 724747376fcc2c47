"""Monte Carlo upper bound on code distance, plus the brute-force oracle.

For each physical error rate a batch of depolarizing (or pure-X) errors is
sampled, decoded, and the residual error classified as stabilizer or logical.
Every logical residual is an explicit logical operator, so the running
minimum weight is a certified upper bound on code distance; the best witness
travels with the report and can be re-verified independently.

Trials are reproducible: each (rate, trial) pair owns an RNG stream derived
from the master seed, so reports are bit-identical across runs, batch sizes
and worker counts.
"""

from __future__ import annotations

import enum
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from . import gf2, pauli
from .codes import StabilizerCode
from .decoder import BPConfig, ChannelPrior, DecoderContext, bp_decode_batch, osd_post_process

SCHEMA_VERSION = 1
DEFAULT_RATES = (0.01, 0.02, 0.05, 0.08, 0.10, 0.12, 0.15)


class NoiseKind(str, enum.Enum):
    DEPOLARIZING = "depolarizing"
    PURE_X = "pureX"


class ResidualClass(enum.Enum):
    STABILIZER = "stabilizer"
    LOGICAL = "logical"
    SYNDROME_NONZERO = "syndrome_nonzero"


@dataclass(frozen=True)
class TrialConfig:
    rates: tuple[float, ...] = DEFAULT_RATES
    trials_per_rate: int = 10_000
    master_seed: int = 0
    noise_kind: NoiseKind = NoiseKind.DEPOLARIZING
    decoder: BPConfig = field(default_factory=BPConfig)

    def __post_init__(self):
        if not self.rates:
            raise ValueError("need at least one error rate")
        if any(not 0.0 < p < 1.0 for p in self.rates):
            raise ValueError("error rates must be in (0, 1)")
        if self.trials_per_rate < 1:
            raise ValueError("need at least one trial per rate")


@dataclass
class RateStats:
    p: float
    trials: int
    logical_events: int
    min_weight: int | None


@dataclass
class DistanceReport:
    code_name: str
    n: int
    k: int
    upper_bound: int
    witness: pauli.SymplecticPauli | None
    per_rate: list[RateStats]
    seed: int
    decoder: BPConfig

    def to_json_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "code": self.code_name,
            "n": self.n,
            "k": self.k,
            "upper_bound": self.upper_bound,
            "witness_pauli_string": None if self.witness is None else pauli.to_string(self.witness),
            "per_rate": [
                {
                    "p": r.p,
                    "trials": r.trials,
                    "logical_events": r.logical_events,
                    "min_weight": r.min_weight,
                }
                for r in self.per_rate
            ],
            "seed": self.seed,
            "decoder_config": {
                "max_iterations": self.decoder.max_iterations,
                "clip": self.decoder.clip,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)

    def to_csv(self) -> str:
        lines = ["p,trials,logical_events,min_weight"]
        for r in self.per_rate:
            mw = "" if r.min_weight is None else r.min_weight
            lines.append(f"{r.p},{r.trials},{r.logical_events},{mw}")
        return "\n".join(lines) + "\n"


def trial_rng(master_seed: int, rate_idx: int, trial_idx: int) -> np.random.Generator:
    """Independent per-trial stream: master seed plus a (rate, trial) spawn key."""
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=(rate_idx, trial_idx))
    return np.random.default_rng(ss)


def sample_error(n: int, p: float, kind: NoiseKind, rng: np.random.Generator) -> pauli.SymplecticPauli:
    """One noise draw: i.i.d. per qubit.

    Depolarizing: identity with 1-p, else uniform X/Z/Y.  Pure-X: X with
    probability p (used for the logical-X minimum-weight study of Z-type
    codes, which have no protection against Z).
    """
    if not 0.0 < p < 1.0:
        raise ValueError("error rate must be in (0, 1)")
    if kind == NoiseKind.PURE_X:
        ex = (rng.random(n) < p).astype(np.uint8)
        return pauli.SymplecticPauli.from_arrays(ex, np.zeros(n, dtype=np.uint8))
    u = rng.random(n)
    hit = u < p
    which = rng.integers(0, 3, size=n)  # 0=X, 1=Z, 2=Y
    ex = (hit & ((which == 0) | (which == 2))).astype(np.uint8)
    ez = (hit & ((which == 1) | (which == 2))).astype(np.uint8)
    return pauli.SymplecticPauli.from_arrays(ex, ez)


def classify_residual(code: StabilizerCode, r: pauli.SymplecticPauli) -> ResidualClass:
    """Stabilizer / logical / nonzero-syndrome trichotomy for a residual."""
    if not code.syndrome(r).is_zero():
        return ResidualClass.SYNDROME_NONZERO
    if code.in_stabilizer_group(r):
        return ResidualClass.STABILIZER
    return ResidualClass.LOGICAL


def verify_witness(code: StabilizerCode, w: pauli.SymplecticPauli, expected_weight: int | None = None) -> bool:
    """True iff w is a genuine logical operator of the stated weight."""
    if w is None or w.n != code.n:
        return False
    if not code.syndrome(w).is_zero():
        return False
    if code.in_stabilizer_group(w):
        return False
    if expected_weight is not None and pauli.weight(w) != expected_weight:
        return False
    return True


def _sample_batch(code: StabilizerCode, p: float, kind: NoiseKind, seed: int, rate_idx: int, count: int):
    ex = np.empty((count, code.n), dtype=np.uint8)
    ez = np.empty((count, code.n), dtype=np.uint8)
    for t in range(count):
        e = sample_error(code.n, p, kind, trial_rng(seed, rate_idx, t))
        ex[t] = e.ex
        ez[t] = e.ez
    return ex, ez


def _decoupled_bits(ex: np.ndarray, ez: np.ndarray) -> np.ndarray:
    y = ex & ez
    return np.hstack([ex & ~y & 1, ez & ~y & 1, y])


def _decode_chunk(ctx: DecoderContext, S: np.ndarray, prior: ChannelPrior, cfg: BPConfig):
    """Decode a syndrome chunk; returns canonical (ex, ez) estimates."""
    bits, post, conv, _ = bp_decode_batch(ctx, S, prior, cfg)
    for i in np.nonzero(~conv)[0]:
        bits[i] = osd_post_process(ctx, S[i], post[i])
    n = ctx.nbits // 3
    a, b, c = bits[:, :n], bits[:, n : 2 * n], bits[:, 2 * n :]
    return a ^ c, b ^ c, conv


def estimate_upper_bound(code: StabilizerCode, cfg: TrialConfig, threads: int = 1) -> DistanceReport:
    """Sweep rates, decode trials, and track the minimum logical weight.

    The running minimum starts at the code length; only logical residuals
    lower it, and in pure-X mode only X-type residuals (ez = 0) count.  The
    first witness attaining the final minimum is kept.
    """
    ctx = DecoderContext.for_code(code)
    reducer = code.stabilizer_reducer()
    hd_t = code.hd.T.astype(np.float64)
    best = code.n
    witness: pauli.SymplecticPauli | None = None
    per_rate: list[RateStats] = []

    chunk_size = max(256, min(20_000, 20_000_000 // max(ctx.num_edges, 1)))
    prior_cfg = cfg.decoder

    for rate_idx, p in enumerate(cfg.rates):
        T = cfg.trials_per_rate
        ex, ez = _sample_batch(code, p, cfg.noise_kind, cfg.master_seed, rate_idx, T)
        D = _decoupled_bits(ex, ez)
        S = ((D.astype(np.float64) @ hd_t) % 2).astype(np.uint8)
        prior = ChannelPrior(p)

        chunks = [(start, min(start + chunk_size, T)) for start in range(0, T, chunk_size)]
        if threads > 1 and len(chunks) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(
                    pool.map(lambda se: _decode_chunk(ctx, S[se[0] : se[1]], prior, prior_cfg), chunks)
                )
        else:
            results = [_decode_chunk(ctx, S[a:b], prior, prior_cfg) for a, b in chunks]
        est_x = np.vstack([r[0] for r in results])
        est_z = np.vstack([r[1] for r in results])

        rx = ex ^ est_x
        rz = ez ^ est_z
        weights = np.count_nonzero(rx | rz, axis=1)
        candidates = weights > 0
        if cfg.noise_kind == NoiseKind.PURE_X:
            candidates &= ~rz.any(axis=1)
        idx = np.nonzero(candidates)[0]
        logical_events = 0
        rate_min: int | None = None
        if idx.size:
            member = reducer.contains_batch(np.hstack([rx[idx], rz[idx]]))
            logical_idx = idx[~member]
            logical_events = int(logical_idx.size)
            for t in logical_idx:
                w = int(weights[t])
                rate_min = w if rate_min is None else min(rate_min, w)
                if w < best:
                    best = w
                    witness = pauli.SymplecticPauli.from_arrays(rx[t], rz[t])
        per_rate.append(RateStats(p=p, trials=T, logical_events=logical_events, min_weight=rate_min))

    return DistanceReport(
        code_name=code.name,
        n=code.n,
        k=code.k,
        upper_bound=best,
        witness=witness,
        per_rate=per_rate,
        seed=cfg.master_seed,
        decoder=cfg.decoder,
    )


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------


class BudgetExceeded(Exception):
    """The exhaustive search would visit more candidates than allowed."""


@dataclass
class OracleResult:
    searched_max_weight: int
    found_distance: int | None
    witness: pauli.SymplecticPauli | None = None


def brute_force_distance(code: StabilizerCode, w_max: int, budget: int = 50_000_000) -> OracleResult:
    """Exhaustive search over all Paulis of weight 1..w_max.

    Returns the first weight admitting a zero-syndrome non-stabilizer
    operator; independent of the decoder and of any rank shortcuts in the
    sampling path.  Cost grows as C(n, w) * 3^w, hence the budget guard.
    """
    n = code.n
    total = sum(comb(n, w) * 3**w for w in range(1, w_max + 1))
    if total > budget:
        raise BudgetExceeded(f"search size {total} exceeds budget {budget}")

    # Syndrome of each single-qubit Pauli as a python int (bit i = generator i).
    synd = []
    hx_cols = code.hx.T
    hz_cols = code.hz.T
    for q in range(n):
        sx = int.from_bytes(np.packbits(hz_cols[q], bitorder="little").tobytes(), "little")
        sz = int.from_bytes(np.packbits(hx_cols[q], bitorder="little").tobytes(), "little")
        synd.append((0, sx, sz, sx ^ sz))  # index by Pauli code 0=I,1=X,2=Z,3=Y

    reducer = code.stabilizer_reducer()

    def is_logical(support, paulis) -> bool:
        vec = np.zeros(2 * n, dtype=np.uint8)
        for q, pc in zip(support, paulis):
            if pc in (1, 3):
                vec[q] = 1
            if pc in (2, 3):
                vec[n + q] = 1
        return not reducer.contains(gf2.BitVector.from_array(vec))

    found: list = []

    def rec(start: int, remaining: int, acc: int, support: list, paulis: list) -> bool:
        if remaining == 0:
            if acc == 0 and is_logical(support, paulis):
                found.append((list(support), list(paulis)))
                return True
            return False
        for q in range(start, n - remaining + 1):
            support.append(q)
            for pc in (1, 2, 3):
                paulis.append(pc)
                if rec(q + 1, remaining - 1, acc ^ synd[q][pc], support, paulis):
                    return True
                paulis.pop()
            support.pop()
        return False

    for w in range(1, w_max + 1):
        if rec(0, w, 0, [], []):
            support, paulis = found[0]
            ex = np.zeros(n, dtype=np.uint8)
            ez = np.zeros(n, dtype=np.uint8)
            for q, pc in zip(support, paulis):
                ex[q] = 1 if pc in (1, 3) else 0
                ez[q] = 1 if pc in (2, 3) else 0
            return OracleResult(w_max, w, pauli.SymplecticPauli.from_arrays(ex, ez))
    return OracleResult(w_max, None, None)
