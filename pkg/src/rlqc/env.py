"""The gate-composition MDP.

An episode starts from the identity circuit and appends one gate from
the base per step (U_{n+1} = U_n . A, circuit order). The observation is
the relative matrix O_n = U_n+ . target, i.e. what remains to be applied
(target = U_n . O_n), flattened to 8 reals. The episode is solved once
agf(U_n, target) reaches the configured tolerance, and truncated unsolved
at max_steps. Truncation is flagged separately from solving so value
bootstrapping can treat it as non-terminal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, StateError, ValidationError
from .gates import GateSet
from .unitary import INTERNAL_ATOL, IDENTITY, dagger, require_unitary, to_real_vector

REWARD_KINDS = ("dense", "sparse")


@dataclass(frozen=True)
class EnvConfig:
    """Episode parameters shared by every run of a task."""

    gateset: GateSet
    tolerance_agf: float
    max_steps: int
    reward_kind: str

    def __post_init__(self):
        if not (1.0 / 3.0 < self.tolerance_agf < 1.0):
            raise ValidationError(
                f"tolerance_agf must be in (1/3, 1), got {self.tolerance_agf}")
        if not 1 <= self.max_steps <= 10_000:
            raise ValidationError(
                f"max_steps must be in [1, 10000], got {self.max_steps}")
        if self.reward_kind not in REWARD_KINDS:
            raise ValidationError(
                f"reward_kind must be one of {REWARD_KINDS}, got {self.reward_kind!r}")


class CompileEnv:
    """Single-owner environment instance; run many in parallel, share none.

    State is exposed read-only through attributes: target, product,
    step_count, done, solved, truncated, current_agf.
    """

    def __init__(self, config: EnvConfig):
        self.config = config
        self.target: np.ndarray | None = None
        self.product = IDENTITY.copy()
        self.step_count = 0
        self.done = True  # unusable until reset
        self.solved = False
        self.truncated = False
        self.current_agf = 0.0

    def reset(self, target: np.ndarray) -> np.ndarray:
        """Start an episode against a new target; returns the observation.

        Targets are validated against the internal drift budget (1e-8)
        rather than the construction tolerance: composed and text-rounded
        targets carry up to ~1e-8 of accumulated error.
        """
        self.target = require_unitary(target, INTERNAL_ATOL, what="target")
        self.product = IDENTITY.copy()
        self.step_count = 0
        self.done = False
        self.solved = False
        self.truncated = False
        obs, self.current_agf = self._observe()
        return obs

    def _observe(self) -> tuple[np.ndarray, float]:
        rel = dagger(self.product) @ self.target
        tr = rel[0, 0] + rel[1, 1]
        fid = (tr.real * tr.real + tr.imag * tr.imag + 2.0) / 6.0
        return to_real_vector(rel), fid

    def step(self, action: int) -> tuple[np.ndarray, float, bool, dict]:
        """Append gate `action`; returns (obs, reward, done, info).

        info carries 'solved', 'truncated' and 'agf' for the new state.
        The solved check runs after every step (never at reset), so even
        an identity target takes one action to finish.
        """
        if self.done:
            raise StateError("step() after episode end; call reset()")
        n_gates = len(self.config.gateset)
        if not 0 <= action < n_gates:
            raise DomainError(f"action {action} out of range [0, {n_gates})")

        self.product = self.product @ self.config.gateset.matrices[action]
        self.step_count += 1
        obs, fid = self._observe()
        self.current_agf = fid

        cap = self.config.max_steps
        self.solved = fid >= self.config.tolerance_agf
        self.truncated = not self.solved and self.step_count == cap
        self.done = self.solved or self.truncated

        if self.config.reward_kind == "dense":
            reward = float(cap - self.step_count + 1) if self.solved \
                else -(1.0 - fid) / cap
        else:
            reward = 0.0 if self.solved else -1.0 / cap

        info = {"solved": self.solved, "truncated": self.truncated, "agf": fid}
        return obs, reward, self.done, info


@dataclass(frozen=True)
class ReplayResult:
    solved: bool
    final_agf: float
    rewards: list[float]
    length: int


def replay(config: EnvConfig, target: np.ndarray,
           actions: list[int]) -> ReplayResult:
    """Deterministically re-execute an action sequence.

    Steps through `actions` until the episode ends or the list runs out;
    actions beyond the first solved/truncated step are not executed (the
    episode is over). Used to re-verify compiler output and HER goals.
    """
    if len(actions) > config.max_steps:
        raise DomainError(
            f"{len(actions)} actions exceed max_steps {config.max_steps}")
    env = CompileEnv(config)
    env.reset(target)
    rewards: list[float] = []
    for action in actions:
        if env.done:
            break
        _, reward, _, _ = env.step(action)
        rewards.append(reward)
    return ReplayResult(solved=env.solved, final_agf=env.current_agf,
                        rewards=rewards, length=env.step_count)
