"""
Global minimisation of the trap energy by simulated annealing.

Each restart runs a Metropolis chain of single-particle Gaussian moves under
geometric cooling, keeps the lowest-energy configuration it visits and then
polishes it with a deterministic local descent.  Restart seeds are derived
from a master seed with a fixed 64-bit mixer, so a set of restarts gives the
same record whether it runs serially or in a process pool.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.optimize import minimize

from . import _kernels
from .energy import ModelParams, as_configuration, config_to_list, energy_gradient, total_energy
from .potentials import KIND_CODES, DomainError
from .structure import ShellStructure, classify_shells

logger = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class AnnealSchedule:
    """Cooling schedule.  ``t_*`` are optimizer temperatures, unrelated to alpha."""

    t_initial: float = 1.0
    t_final: float = 1e-4
    cooling_factor: float = 0.95
    sweeps_per_stage: int = 200
    step_initial: float = 0.5
    step_adapt_target: float = 0.44

    def __post_init__(self):
        if not (self.t_initial > 0 and 0 < self.t_final < self.t_initial):
            raise DomainError("need 0 < t_final < t_initial")
        if not 0 < self.cooling_factor < 1:
            raise DomainError("cooling_factor must lie in (0, 1)")
        if self.sweeps_per_stage < 1:
            raise DomainError("sweeps_per_stage must be >= 1")
        if not self.step_initial > 0:
            raise DomainError("step_initial must be positive")
        if not 0 < self.step_adapt_target < 1:
            raise DomainError("step_adapt_target must lie in (0, 1)")

    @property
    def n_stages(self) -> int:
        return int(math.ceil(math.log(self.t_final / self.t_initial) / math.log(self.cooling_factor))) + 1

    def temperatures(self) -> np.ndarray:
        return self.t_initial * self.cooling_factor ** np.arange(self.n_stages)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> AnnealSchedule:
        return cls(**data)


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(master_seed: int, index: int) -> int:
    """64-bit seed of sub-run ``index``: ``splitmix64(splitmix64(master) ^ index)``."""
    return splitmix64(splitmix64(master_seed & _MASK64) ^ (index & _MASK64))


@dataclass
class RefineResult:
    config: np.ndarray
    energy: float
    iterations: int
    converged: bool
    flag: str = ""

    def __iter__(self):
        return iter((self.config, self.energy))


@dataclass
class AnnealResult:
    config: np.ndarray
    energy: float
    history: list[float]
    refine: RefineResult

    def __iter__(self):
        return iter((self.config, self.energy))


def _fd_hessian(params: ModelParams, pos: np.ndarray, h: float = 1e-6) -> np.ndarray:
    x = pos.ravel()
    n = x.size
    hess = np.empty((n, n))
    for k in range(n):
        xp, xm = x.copy(), x.copy()
        xp[k] += h
        xm[k] -= h
        gp = energy_gradient(params, xp.reshape(-1, 2)).ravel()
        gm = energy_gradient(params, xm.reshape(-1, 2)).ravel()
        hess[:, k] = (gp - gm) / (2 * h)
    return 0.5 * (hess + hess.T)


def _safe_energy(params, pos):
    try:
        return total_energy(params, pos)
    except DomainError:
        return math.inf


def refine(params: ModelParams, config, gtol: float = 1e-8, max_iter: int = 100_000) -> RefineResult:
    """Local descent until the gradient max-norm drops below ``gtol``.

    L-BFGS brings the configuration close to the minimum; a Newton polish on a
    finite-difference Hessian of the analytic gradient then removes the last
    digits, where energy differences are below rounding.  The rotational zero
    mode is projected out of the Newton step.
    """
    pos0 = as_configuration(config, params.n_particles)
    e0 = total_energy(params, pos0)
    if not math.isfinite(e0):
        raise DomainError("refine needs a finite-energy starting configuration")
    gmax = np.abs(energy_gradient(params, pos0)).max()
    if gmax < gtol:
        return RefineResult(pos0, e0, 0, True)

    def fun(x):
        pos = x.reshape(-1, 2)
        try:
            return total_energy(params, pos), energy_gradient(params, pos).ravel()
        except DomainError:
            return math.inf, np.zeros_like(x)

    res = minimize(fun, pos0.ravel(), jac=True, method="L-BFGS-B",
                   options={"maxiter": max_iter, "maxcor": 30, "ftol": 0.0, "gtol": gtol * 1e-2})
    pos, energy, iters = pos0, e0, int(res.nit)
    if res.fun <= e0:
        pos, energy = res.x.reshape(-1, 2), float(total_energy(params, res.x.reshape(-1, 2)))

    flag = ""
    grad = energy_gradient(params, pos)
    eps = 8 * np.finfo(float).eps
    while np.abs(grad).max() >= gtol and iters < max_iter:
        hess = _fd_hessian(params, pos)
        lam, vec = np.linalg.eigh(hess)
        scale = np.abs(lam).max()
        keep = np.abs(lam) > 1e-9 * scale
        coef = (vec.T @ grad.ravel())[keep] / np.abs(lam[keep])
        step = -(vec[:, keep] @ coef).reshape(-1, 2)
        gnorm = np.abs(grad).max()
        t = 1.0
        for _ in range(40):
            trial = pos + t * step
            e_trial = _safe_energy(params, trial)
            if e_trial <= energy + eps * max(1.0, abs(energy)):
                g_trial = energy_gradient(params, trial)
                if e_trial < energy or np.abs(g_trial).max() < gnorm:
                    break
            t *= 0.5
        else:
            flag = "line_search_failed"
            break
        pos, energy, grad = trial, e_trial, g_trial
        iters += 1

    converged = bool(np.abs(grad).max() < gtol)
    if energy > e0:
        # only reachable through rounding when the input was already stationary
        return RefineResult(pos0, e0, iters, bool(gmax < gtol), flag or "no_descent")
    if not converged and not flag:
        flag = "max_iter"
    return RefineResult(np.array(pos), float(energy), iters, converged, flag)


def initial_configuration(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform random points in a disk of radius ``sqrt(n)``."""
    r = math.sqrt(n) * np.sqrt(rng.random(n))
    theta = 2 * np.pi * rng.random(n)
    return np.column_stack([r * np.cos(theta), r * np.sin(theta)])


def anneal(params: ModelParams, schedule: AnnealSchedule = AnnealSchedule(), seed: int = 0,
           refine_result: bool = True) -> AnnealResult:
    """Single annealing chain followed by local refinement of its best visited state."""
    n = params.n_particles
    if n < 2:
        raise DomainError("annealing needs at least two particles")
    spec = params.potential
    kind = KIND_CODES[spec.kind]
    alpha, strength, conf = float(spec.alpha), float(spec.coulomb_strength), float(params.confinement_strength)
    rng = np.random.default_rng(seed & _MASK64)

    pos = initial_configuration(n, rng)
    energy = _kernels.configuration_energy(pos, kind, alpha, strength, conf)
    while not math.isfinite(energy):
        pos = initial_configuration(n, rng)
        energy = _kernels.configuration_energy(pos, kind, alpha, strength, conf)
    best_pos, best_energy = pos.copy(), energy
    step = schedule.step_initial
    max_step = 2.0 * math.sqrt(n)
    moves = schedule.sweeps_per_stage * n
    history = []
    for temp in schedule.temperatures():
        which = rng.integers(0, n, size=moves)
        noise = rng.standard_normal((moves, 2))
        uniform = rng.random(moves)
        energy, best_energy, accepted = _kernels.metropolis_stage(
            pos, energy, best_pos, best_energy, kind, alpha, strength, conf,
            float(temp), step, which, noise, uniform)
        # resynchronise the running energy to avoid drift
        energy = _kernels.configuration_energy(pos, kind, alpha, strength, conf)
        best_energy = _kernels.configuration_energy(best_pos, kind, alpha, strength, conf)
        history.append(float(best_energy))
        ratio = accepted / moves
        step = min(max(step * min(max(ratio / schedule.step_adapt_target, 0.5), 2.0), 1e-8), max_step)

    if refine_result:
        ref = refine(params, best_pos)
    else:
        e = total_energy(params, best_pos)
        ref = RefineResult(best_pos.copy(), e, 0, False, "skipped")
    history.append(float(ref.energy))
    return AnnealResult(ref.config, ref.energy, history, ref)


@dataclass
class RunRecord:
    params: ModelParams
    schedule: AnnealSchedule
    master_seed: int
    n_restarts: int
    best_energy: float
    best_config: np.ndarray
    shells: ShellStructure
    per_restart_energies: list[float]
    refinement_iterations: int
    restart_seeds: list[int] = field(default_factory=list)
    best_restart: int = 0
    converged: bool = True

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "schedule": self.schedule.to_dict(),
            "master_seed": int(self.master_seed),
            "n_restarts": int(self.n_restarts),
            "restart_seeds": [int(s) for s in self.restart_seeds],
            "best_restart": int(self.best_restart),
            "best_energy": float(self.best_energy),
            "best_config": config_to_list(self.best_config),
            "shells": self.shells.to_dict(),
            "shell_label": self.shells.label,
            "per_restart_energies": [float(e) for e in self.per_restart_energies],
            "refinement_iterations": int(self.refinement_iterations),
            "converged": bool(self.converged),
        }

    @classmethod
    def from_dict(cls, data: dict) -> RunRecord:
        return cls(
            params=ModelParams.from_dict(data["params"]),
            schedule=AnnealSchedule.from_dict(data["schedule"]),
            master_seed=int(data["master_seed"]),
            n_restarts=int(data["n_restarts"]),
            best_energy=float(data["best_energy"]),
            best_config=as_configuration(data["best_config"]),
            shells=ShellStructure.from_dict(data["shells"]),
            per_restart_energies=[float(e) for e in data["per_restart_energies"]],
            refinement_iterations=int(data["refinement_iterations"]),
            restart_seeds=[int(s) for s in data.get("restart_seeds", [])],
            best_restart=int(data.get("best_restart", 0)),
            converged=bool(data.get("converged", True)),
        )


def _restart(args):
    params, schedule, seed = args
    return anneal(params, schedule, seed)


def multi_restart(params: ModelParams, schedule: AnnealSchedule = AnnealSchedule(),
                  n_restarts: int = 10, master_seed: int = 0, workers: int = 1) -> RunRecord:
    """Best of ``n_restarts`` independent annealing runs."""
    if n_restarts < 1:
        raise DomainError("n_restarts must be >= 1")
    seeds = [derive_seed(master_seed, k) for k in range(n_restarts)]
    jobs = [(params, schedule, s) for s in seeds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_restart, jobs))
    else:
        results = [_restart(job) for job in jobs]
    energies = [r.energy for r in results]
    best = int(np.argmin(energies))
    logger.info("best restart %d of %d: E = %.12g", best, n_restarts, energies[best])
    winner = results[best]
    return RunRecord(
        params=params,
        schedule=schedule,
        master_seed=int(master_seed),
        n_restarts=n_restarts,
        best_energy=float(winner.energy),
        best_config=winner.config,
        shells=classify_shells(winner.config),
        per_restart_energies=energies,
        refinement_iterations=sum(r.refine.iterations for r in results),
        restart_seeds=seeds,
        best_restart=best,
        converged=all(r.refine.converged for r in results),
    )
