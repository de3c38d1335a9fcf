"""
Incremental entangler-count search with seeded random restarts.

For each count from min_entanglers up, every variant (all-global, then one
single-pair coupler at each slot when allowed) runs restarts in fixed-size
batches. Each restart draws its start from a generator keyed by
(seed, count, variant, restart), so batches can run on a thread pool and
still reduce to the same result in restart order.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

import numpy as np

from globalgates.core.circuit import entangler_count, evaluate
from globalgates.core.config import get_settings
from globalgates.core.errors import InvalidOptionError, OptimizationAborted
from globalgates.core.tensor import aligned_distance_and_phase, raw_distance
from globalgates.enums import FinalLayer, ObjectiveMode
from globalgates.schemas.circuit import Circuit
from globalgates.schemas.synthesis import CouplerModel, SynthesisAttempt, SynthesisProblem, SynthesisResult
from globalgates.synthesis.ansatz import Ansatz, build_ansatz, encode_circuit
from globalgates.synthesis.optimizer import OptimizeOutcome, fit
from globalgates.utils.timing import log_timing

logger = logging.getLogger(__name__)

ZERO_PARAMETER = 1e-9


@dataclass(frozen=True)
class _Candidate:
    restart: int
    outcome: OptimizeOutcome
    sparsity: int


def _nonzero_locals(ansatz: Ansatz, params: np.ndarray) -> int:
    local = np.concatenate([params[ansatz.local_slice], params[ansatz.final_pulse_slice], params[ansatz.final_phase_slice]])
    return int(np.sum(np.abs(local) > ZERO_PARAMETER))


def _rank(candidate: _Candidate) -> tuple:
    return (candidate.outcome.aligned_distance, candidate.sparsity, candidate.restart)


def _start(seed: int, n_entanglers: int, variant: int, restart: int, size: int, active=None, base=None) -> np.ndarray:
    rng = np.random.default_rng([seed, n_entanglers, variant, restart])
    draw = rng.uniform(0.0, 2 * np.pi, size)
    if active is None:
        return draw
    return np.where(active, draw, base)


def _run_batches(
    ansatz: Ansatz,
    problem_target: np.ndarray,
    starts: Iterable[int],
    make_start,
    *,
    mode,
    tolerance: float,
    batch_size: int,
    workers: int,
    active=None,
) -> tuple[Optional[_Candidate], int, int]:
    """Run restarts batch by batch until one converges. Returns (best, used, aborted)."""

    def run(restart: int) -> Optional[_Candidate]:
        try:
            outcome = fit(ansatz, problem_target, make_start(restart), mode=mode, active=active)
        except OptimizationAborted as exc:
            logger.debug("search: restart %d aborted: %s", restart, exc)
            return None
        return _Candidate(restart, outcome, _nonzero_locals(ansatz, outcome.params))

    restarts = list(starts)
    best: Optional[_Candidate] = None
    used = aborted = 0
    executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for offset in range(0, len(restarts), batch_size):
            batch = restarts[offset : offset + batch_size]
            results = list(executor.map(run, batch)) if executor else [run(r) for r in batch]
            used += len(batch)
            for candidate in results:
                if candidate is None:
                    aborted += 1
                elif best is None or _rank(candidate) < _rank(best):
                    best = candidate
            if best is not None and best.outcome.aligned_distance < tolerance:
                break
    finally:
        if executor:
            executor.shutdown()
    return best, used, aborted


def _variants(problem: SynthesisProblem, n_entanglers: int) -> List[Optional[int]]:
    slots: List[Optional[int]] = [None]
    if problem.allow_one_nonglobal:
        slots.extend(range(n_entanglers))
    return slots


def _result(
    circuit: Circuit,
    target: np.ndarray,
    tolerance: float,
    restarts_used: int,
    seed: int,
    attempts: List[SynthesisAttempt],
) -> SynthesisResult:
    u = evaluate(circuit)
    aligned, _ = aligned_distance_and_phase(target, u)
    return SynthesisResult(
        circuit=circuit,
        residual_raw=raw_distance(target, u),
        residual_aligned=aligned,
        entangler_count=entangler_count(circuit),
        restarts_used=restarts_used,
        converged=aligned < tolerance,
        tolerance=tolerance,
        seed=seed,
        attempts=attempts,
    )


@log_timing("synthesize")
def synthesize(
    problem: SynthesisProblem,
    *,
    workers: Optional[int] = None,
    batch_size: Optional[int] = None,
) -> SynthesisResult:
    """
    Smallest entangler count (within the problem's range) reaching tolerance.

    A search that fails at every count returns the best circuit seen with
    converged = False; that is evidence, not a proof of minimality.
    """
    settings = get_settings()
    workers = settings.SYNTH_WORKERS if workers is None else workers
    batch_size = settings.SYNTH_BATCH_SIZE if batch_size is None else batch_size
    if workers < 1 or batch_size < 1:
        raise InvalidOptionError(f"workers and batch_size must be at least 1, got {workers} and {batch_size}")
    name = problem.target_name.value if problem.target_name else "target"
    logger.info(
        "synthesize: target=%s coupler=%s counts=%d..%d restarts=%d tol=%.1e seed=%d workers=%d",
        name,
        problem.coupler.kind.value,
        problem.min_entanglers,
        problem.max_entanglers,
        problem.restarts_per_count,
        problem.tolerance,
        problem.seed,
        workers,
    )

    attempts: List[SynthesisAttempt] = []
    total_used = 0
    overall: Optional[tuple[Ansatz, _Candidate]] = None

    for n_g in range(problem.min_entanglers, problem.max_entanglers + 1):
        for variant, slot in enumerate(_variants(problem, n_g)):
            ansatz = build_ansatz(
                problem.n_qubits, n_g, problem.coupler, final_layer=problem.final_layer, nonglobal_slot=slot
            )

            def make_start(restart: int, n_g=n_g, variant=variant, size=ansatz.n_params) -> np.ndarray:
                return _start(problem.seed, n_g, variant, restart, size)

            best, used, aborted = _run_batches(
                ansatz,
                problem.target,
                range(problem.restarts_per_count),
                make_start,
                mode=problem.objective_mode,
                tolerance=problem.tolerance,
                batch_size=batch_size,
                workers=workers,
            )
            total_used += used
            residual = best.outcome.aligned_distance if best else float("inf")
            converged = residual < problem.tolerance
            attempts.append(
                SynthesisAttempt(
                    n_entanglers=n_g,
                    nonglobal_slot=slot,
                    restarts_used=used,
                    aborted=aborted,
                    best_residual=residual if best else None,
                    converged=converged,
                )
            )
            logger.info(
                "synthesize: n_g=%d nonglobal_slot=%s best=%.3e restarts=%d converged=%s",
                n_g,
                slot,
                residual,
                used,
                converged,
            )
            if best is not None and (overall is None or residual < overall[1].outcome.aligned_distance):
                overall = (ansatz, best)
            if converged:
                circuit = ansatz.to_circuit(best.outcome.params, name=f"{name}-{problem.coupler.kind.value}-{n_g}")
                return _result(circuit, problem.target, problem.tolerance, total_used, problem.seed, attempts)

    if overall is None:
        logger.warning("synthesize: every restart aborted")
        ansatz = build_ansatz(problem.n_qubits, problem.min_entanglers, problem.coupler, final_layer=problem.final_layer)
        circuit = ansatz.to_circuit(np.zeros(ansatz.n_params), name=f"{name}-unconverged")
    else:
        ansatz, best = overall
        circuit = ansatz.to_circuit(best.outcome.params, name=f"{name}-unconverged")
    logger.info(
        "synthesize: no count up to %d reached %.1e (evidence only)", problem.max_entanglers, problem.tolerance
    )
    return _result(circuit, problem.target, problem.tolerance, total_used, problem.seed, attempts)


@log_timing("refine_template")
def refine_template(
    circuit: Circuit,
    target,
    coupler: CouplerModel,
    free_qubits: Sequence[int],
    *,
    tolerance: Optional[float] = None,
    restarts: Optional[int] = None,
    seed: Optional[int] = None,
) -> SynthesisResult:
    """
    Re-optimize the angles of a fixed-structure circuit.

    Free parameters: local ops on free_qubits, the entangler angles and the
    final phases of every qubit. The circuit's own angles are the first
    start; seeded random starts on the free parameters follow if needed.
    """
    settings = get_settings()
    tolerance = settings.SYNTH_TOLERANCE if tolerance is None else tolerance
    restarts = settings.SYNTH_RESTARTS if restarts is None else restarts
    if tolerance <= 0 or restarts < 0:
        raise InvalidOptionError(f"tolerance must be positive and restarts non-negative, got {tolerance} and {restarts}")
    seed = settings.SYNTH_SEED if seed is None else seed
    target = np.asarray(target, dtype=np.complex128)

    n_g = entangler_count(circuit)
    ansatz = Ansatz(coupler, n_g, final_layer=FinalLayer.FULL)
    base = encode_circuit(circuit, ansatz)

    active = np.zeros(ansatz.n_params, dtype=bool)
    for q in free_qubits:
        for layer in range(ansatz.n_layers):
            for s in range(ansatz.width):
                active[ansatz.local_index(layer, q, s)] = True
        for s in range(2):
            active[ansatz.final_pulse_index(q, s)] = True
    active[ansatz.entangler_slice] = True
    active[ansatz.final_phase_slice] = True

    def make_start(restart: int) -> np.ndarray:
        if restart == 0:
            return base
        return _start(seed, n_g, 0, restart, ansatz.n_params, active=active, base=base)

    best, used, aborted = _run_batches(
        ansatz,
        target,
        range(restarts + 1),
        make_start,
        mode=ObjectiveMode.ALIGNED_SQUARED,
        tolerance=tolerance,
        batch_size=1,
        workers=1,
        active=active,
    )
    residual = best.outcome.aligned_distance if best else float("inf")
    attempt = SynthesisAttempt(
        n_entanglers=n_g,
        restarts_used=used,
        aborted=aborted,
        best_residual=residual if best else None,
        converged=residual < tolerance,
    )
    params = best.outcome.params if best else base
    refined = ansatz.to_circuit(params, name=f"{circuit.name or 'circuit'}-refined")
    logger.info("refine_template: %s residual=%.3e after %d start(s)", circuit.name, residual, used)
    return _result(refined, target, tolerance, used, seed, [attempt])


def save_result(path: str | Path, result: SynthesisResult) -> Path:
    path = Path(path)
    path.write_text(result.model_dump_json(indent=2), encoding="utf-8")
    return path


def load_problem(path: str | Path) -> SynthesisProblem:
    return SynthesisProblem.model_validate_json(Path(path).read_text(encoding="utf-8"))
