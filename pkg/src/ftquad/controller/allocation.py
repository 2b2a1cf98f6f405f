"""Rotor-speed allocation with rotors removed after a failure.

After a fault the yaw row of the mixer is dropped together with the failed
rotor columns.  One failure leaves ``[f, M1, M2]`` on three rotors; an
opposing pair leaves ``f`` plus the one moment the surviving pair can make.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..dynamics import ControlCommand, FaultConfig, QuadParams, mixer_matrix


def allocation_layout(failed) -> tuple[list[int], list[int]]:
    """Retained ``(rows, columns)`` of the mixer for a set of failed rotors.

    Rows index ``[f, M1, M2, M3]``; columns are 0-based rotor indices.
    """
    failed = frozenset(failed)
    cols = [i for i in range(4) if i + 1 not in failed]
    if not failed:
        return [0, 1, 2, 3], cols
    if len(failed) == 1:
        return [0, 1, 2], cols
    if failed == {1, 2}:
        return [0, 1], cols
    if failed == {3, 4}:
        return [0, 2], cols
    raise ValueError(f"unsupported failure set {sorted(failed)}")


def allocation_matrix(params: QuadParams, failed=frozenset()) -> np.ndarray:
    rows, cols = allocation_layout(failed)
    return mixer_matrix(params)[np.ix_(rows, cols)]


@lru_cache(maxsize=64)
def _inverse(params: QuadParams, failed: frozenset) -> tuple[list[int], list[int], np.ndarray]:
    rows, cols = allocation_layout(failed)
    A = allocation_matrix(params, failed)
    # reduced matrices are full rank by construction
    assert np.linalg.matrix_rank(A) == len(rows)
    return rows, cols, np.linalg.inv(A)


def allocate(cmd: ControlCommand, fault: FaultConfig, active: bool, params: QuadParams) -> np.ndarray:
    """Rotor speeds (rad/s) realising the retained part of ``cmd``."""
    failed = fault.failed if active else frozenset()
    rows, cols, A_inv = _inverse(params, failed)
    u = np.array([cmd.f, cmd.M[0], cmd.M[1], cmd.M[2]])[rows]
    w_sq = np.zeros(4)
    w_sq[cols] = A_inv @ u
    w_sq = np.clip(w_sq, 0.0, params.omega_max**2)
    return np.sqrt(w_sq)


def retained_components(cmd: ControlCommand, failed=frozenset()) -> np.ndarray:
    rows, _ = allocation_layout(failed)
    return np.array([cmd.f, *cmd.M])[rows]


def condition_numbers(params: QuadParams) -> dict[str, float]:
    configs = {
        "none": frozenset(),
        "single:1": {1},
        "single:2": {2},
        "single:3": {3},
        "single:4": {4},
        "dual:1,2": {1, 2},
        "dual:3,4": {3, 4},
    }
    return {k: float(np.linalg.cond(allocation_matrix(params, v))) for k, v in configs.items()}
