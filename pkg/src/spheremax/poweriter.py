"""Projective power iteration.

For a bilinear form the normalized-gradient map is linear and the absolute
maximum is an attractive fixed point of the induced map on the product of
projective spaces, so iterating q <- grad l(q) / ||grad l(q)|| from a generic
start converges slot-wise and |l(x, y)| at the limit is the first singular
value.  Convergence is checked projectively per slot: the joined vector
always retains a period-2 artifact (the +sigma/-sigma eigenvector pair of the
joined linear map), so "the points in projective space are equal" holds slot
by slot, never jointly, for a generic start.

For r >= 3 the iteration runs on the concatenated vector and the status
reflects the joint projective dynamics, where the relative slot magnitudes
obey an exact period-2 involution (log-magnitudes map to minus themselves):
generic runs report OSCILLATING even when the slot directions have settled on
a critical point.  The final split-and-normalized point and its fixed-point
residual are always reported, so an oscillating run still identifies the
critical point it circles; nothing is certified as the absolute maximum.

The same iteration applied to a square matrix yields the spectral radius.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import multiform
from .errors import NoConvergenceError, ZeroGradientError
from .linalg import Matrix
from .multiform import MultilinearForm

DEFAULT_TOL = 1e-14
DEFAULT_MAX_ITERS = 100_000
DEFAULT_RESTARTS = 5

_OSC_TOL = 1e-10


class Status(enum.Enum):
    CONVERGED = "converged"
    NON_CONVERGED = "non-converged"
    OSCILLATING = "oscillating"


@dataclass(frozen=True)
class IterationResult:
    point: tuple          # one unit vector per slot
    value: float          # |l| at point
    iterations: int
    status: Status
    residual: float       # max_i || dl/dx_i - l * x_i ||


def _canonical_projective(q):
    i = int(np.argmax(np.abs(q)))
    return q if q[i] >= 0 else -q


def _random_slots(form, rng):
    slots = []
    for d in form.dims:
        v = rng.standard_normal(d)
        n = np.linalg.norm(v)
        if n == 0.0:  # pragma: no cover - measure zero
            raise ZeroGradientError("degenerate random start")
        slots.append(v / n)
    return slots


def _split_normalized(q, dims):
    slots = []
    pos = 0
    for d in dims:
        piece = q[pos : pos + d]
        pos += d
        n = np.linalg.norm(piece)
        if n == 0.0:
            raise ZeroGradientError("slot collapsed to zero while splitting")
        slots.append(piece / n)
    return slots


def _value_and_residual(form, slots):
    grads = multiform.gradient(form, slots)
    value = float(np.dot(grads[0], slots[0]))  # Euler identity: = l(slots)
    residual = 0.0
    for g, s in zip(grads, slots):
        residual = max(residual, float(np.linalg.norm(g - value * s)))
    return value, residual


def _finish(form, slots, iterations, status):
    value, residual = _value_and_residual(form, slots)
    return IterationResult(
        point=tuple(slots),
        value=abs(value),
        iterations=iterations,
        status=status,
        residual=residual,
    )


def _iterate_slotwise(form, seed, tol, max_iters):
    """r=2 path: stop when every slot's projective point is stationary and
    the Lagrange fixed-point residual is small."""
    rng = np.random.default_rng(seed)
    slots = _random_slots(form, rng)
    for it in range(1, max_iters + 1):
        grads = multiform.gradient(form, slots)
        value = float(np.dot(grads[0], slots[0]))
        new_slots = []
        cosine = 1.0
        residual = 0.0
        for g, s in zip(grads, slots):
            norm = np.linalg.norm(g)
            if norm == 0.0 or not np.isfinite(norm):
                raise ZeroGradientError(f"zero gradient at iteration {it}")
            residual = max(residual, float(np.linalg.norm(g - value * s)))
            g = g / norm
            cosine = min(cosine, abs(float(np.dot(g, s))))
            new_slots.append(g)
        if cosine >= 1.0 - tol and residual <= 10.0 * tol * (1.0 + abs(value)):
            return slots, it, Status.CONVERGED
        slots = new_slots
    return slots, max_iters, Status.NON_CONVERGED


def _iterate_joint(form, seed, tol, max_iters):
    """r>=3 path: literal iteration on the concatenated vector; the status is
    judged in the joint projective space, where short cycles are detected."""
    rng = np.random.default_rng(seed)
    q = np.concatenate(_random_slots(form, rng))
    q /= np.linalg.norm(q)
    dims = form.dims
    history = []
    offsets = np.cumsum((0,) + dims)
    for it in range(1, max_iters + 1):
        aux = q
        raw_slots = [q[offsets[i] : offsets[i + 1]] for i in range(len(dims))]
        q = np.concatenate(multiform.gradient(form, raw_slots))
        norm = np.linalg.norm(q)
        if norm == 0.0 or not np.isfinite(norm):
            raise ZeroGradientError(f"zero gradient at iteration {it}")
        q = q / norm
        if abs(np.dot(q, aux)) >= 1.0 - tol:
            slots = _split_normalized(q, dims)
            _, residual = _value_and_residual(form, slots)
            value = multiform.evaluate(form, slots)
            if residual <= 10.0 * tol * (1.0 + abs(value)):
                return slots, it, Status.CONVERGED
        canon = _canonical_projective(q)
        # Oscillation = revisiting a projective point at lag 2..4 while still
        # moving (lag-1 distinct); a near-identical lag-1 iterate is slow
        # convergence, handled by the stopping rule above.
        if history and np.linalg.norm(canon - history[-1]) > _OSC_TOL:
            for past in history[:-1]:
                if np.linalg.norm(canon - past) <= _OSC_TOL:
                    return _split_normalized(q, dims), it, Status.OSCILLATING
        history.append(canon)
        if len(history) > 4:  # detect periods 2..4
            history.pop(0)
    return _split_normalized(q, dims), max_iters, Status.NON_CONVERGED


def _run_with_restarts(form, seed, tol, max_iters, restarts):
    iterate = _iterate_slotwise if form.order == 2 else _iterate_joint
    last_exc = None
    best = None
    for k in range(restarts + 1):
        try:
            slots, it, status = iterate(form, seed + k, tol, max_iters)
        except ZeroGradientError as exc:
            last_exc = exc
            continue
        result = _finish(form, slots, it, status)
        if status is Status.CONVERGED:
            return result
        # keep the best-valued non-converged candidate; lowest seed wins ties
        if best is None or result.value > best.value:
            best = result
    if best is not None:
        return best
    raise last_exc if last_exc is not None else ZeroGradientError("all restarts failed")


def bilinear_max(
    form: MultilinearForm,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    max_iters: int = DEFAULT_MAX_ITERS,
    restarts: int = DEFAULT_RESTARTS,
) -> IterationResult:
    """Maximum of |l| over S^n x S^m for a bilinear form.

    Converges to the first singular value of the coefficient matrix for
    generic inputs (the absolute maximum is an attractive fixed point of the
    induced linear map on the product of projective spaces).
    """
    if form.order != 2:
        raise ZeroGradientError(f"bilinear_max needs r=2, got r={form.order}")
    if not np.any(form.coeffs):
        raise ZeroGradientError("zero form")
    return _run_with_restarts(form, seed, tol, max_iters, restarts)


def multilinear_iterate(
    form: MultilinearForm,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    max_iters: int = DEFAULT_MAX_ITERS,
    restarts: int = DEFAULT_RESTARTS,
) -> IterationResult:
    """Normalized-gradient iteration for r >= 2 (best-effort for r >= 3).

    For r = 2 this specializes to bilinear_max.  For r >= 3 a CONVERGED
    result is a critical point (small fixed-point residual) but is NOT
    certified to be the absolute maximum, and generic runs report OSCILLATING
    because the joint projective dynamics carry an exact period-2 magnitude
    cycle; the reported point and value are still meaningful (check the
    residual).
    """
    if form.order < 2:
        raise ZeroGradientError(f"multilinear_iterate needs r>=2, got r={form.order}")
    if not np.any(form.coeffs):
        raise ZeroGradientError("zero form")
    return _run_with_restarts(form, seed, tol, max_iters, restarts)


def spectral_radius(
    m: Matrix,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    max_iters: int = DEFAULT_MAX_ITERS,
) -> float:
    """Spectral radius |lambda_max| via projective power iteration.

    Raises NoConvergenceError when the iteration does not settle, e.g. for
    tied dominant magnitudes (the projective sequence then oscillates).
    """
    if m.rows != m.cols:
        raise NoConvergenceError("spectral_radius requires a square matrix")
    a = m.array
    if not np.any(a):
        raise ZeroGradientError("zero matrix")
    rng = np.random.default_rng(seed)
    w = rng.standard_normal(m.rows)
    w /= np.linalg.norm(w)
    history = []
    estimate = None
    for it in range(1, max_iters + 1):
        aw = a @ w
        norm = float(np.linalg.norm(aw))
        if norm == 0.0:
            raise ZeroGradientError(f"iterate mapped to zero at step {it}")
        nw = aw / norm
        settled = abs(np.dot(nw, w)) >= 1.0 - tol
        if settled and estimate is not None and abs(norm - estimate) <= tol * (1.0 + norm):
            return norm
        estimate = norm if settled else None
        canon = _canonical_projective(nw)
        if history and np.linalg.norm(canon - history[-1]) > _OSC_TOL:
            for past in history[:-1]:
                if np.linalg.norm(canon - past) <= _OSC_TOL:
                    raise NoConvergenceError(
                        f"projective iteration oscillates (period 2..4) at step {it}"
                    )
        history.append(canon)
        if len(history) > 4:
            history.pop(0)
        w = nw
    raise NoConvergenceError(f"no convergence after {max_iters} iterations")
