"""
Command-line interface.

    python -m globalgates verify --catalog ccphase-global-3G --target ccphase
    python -m globalgates synthesize --target ccphase --coupler global-g --max-gates 3 --seed 42
    python -m globalgates physics couplings --ions 3
    python -m globalgates physics sm-gate --g 0.25 --delta 1 --ions 3 --basis z
    python -m globalgates physics fock-check --g 0.1 --delta 1 --cutoff 20
    python -m globalgates catalog list
    python -m globalgates catalog export ccphase-global-3G --out ccphase.qc.json

Exit codes: 0 success, 1 verification failed or search not converged,
2 usage, input or configuration error, 3 internal error.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from pydantic import ValidationError

from globalgates import __version__
from globalgates.core.angles import format_angle, parse_angle
from globalgates.core.catalog import catalog_entry, catalog_keys
from globalgates.core.circuit import entangler_count, phase_groups, verify
from globalgates.core.config import get_settings
from globalgates.core.errors import GlobalGatesError
from globalgates.core.logging_setup import configure_logging
from globalgates.core.serialization import load_circuit, save_circuit
from globalgates.core.targets import resolve_target_name, target_matrix, target_qubits
from globalgates.core.tensor import is_unitary, matrix_to_pairs, pairs_to_matrix, phase_aligned_distance
from globalgates.enums import CouplerKind, ExitCode, FinalLayer, ObjectiveMode, SpinBasis
from globalgates.physics.bichromatic import coupling_for_angle, gate_angle, sm_propagator
from globalgates.physics.fock import fock_simulate
from globalgates.physics.matrix_io import write_matrix
from globalgates.physics.trap import default_relabelling, harmonic_coupling_matrix, magic_couplings, relabel_ions
from globalgates.schemas.circuit import Circuit
from globalgates.schemas.command import CommandResult
from globalgates.schemas.physics import BichromaticParams, TrapSpec
from globalgates.schemas.synthesis import CouplerModel, SynthesisProblem
from globalgates.synthesis.search import synthesize

logger = logging.getLogger(__name__)

FOCK_TOLERANCE = 1e-6


class UsageError(GlobalGatesError, ValueError):
    """Arguments are inconsistent in a way argparse cannot express."""


# --------------------------------------------------------------------------
# Formatting
# --------------------------------------------------------------------------
def format_circuit(circuit: Circuit) -> str:
    parts = []
    for op in circuit.ops:
        qubits = ",".join(str(q) for q in op.qubits)
        angle = f"({format_angle(op.angle)})" if op.angle is not None else ""
        parts.append(f"{op.kind.value}{angle}[{qubits}]")
    return " ".join(parts)


def format_matrix_rows(m: np.ndarray, digits: int = 6) -> str:
    rows = []
    for row in np.asarray(m):
        rows.append("  ".join(f"{z.real:+.{digits}f}{z.imag:+.{digits}f}j" for z in row))
    return "\n".join(rows)


def _parse_relabel(text: Optional[str]) -> Optional[tuple[int, ...]]:
    if not text:
        return None
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"--relabel expects comma-separated ion numbers, got {text!r}") from None


def _load_json(path: Optional[str]) -> dict:
    if not path:
        return {}
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise UsageError(f"{path}: config must be a JSON object")
    return data


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------
def cmd_verify(args: argparse.Namespace) -> CommandResult:
    if bool(args.catalog) == bool(args.circuit):
        raise UsageError("give exactly one of --catalog or --circuit")
    if args.catalog:
        entry = catalog_entry(args.catalog)
        circuit = entry.circuit
        target = resolve_target_name(args.target) if args.target else entry.target
        tol = args.tol if args.tol is not None else entry.tolerance
    else:
        if not args.target:
            raise UsageError("--target is required with --circuit")
        circuit = load_circuit(args.circuit)
        target = resolve_target_name(args.target)
        tol = args.tol

    report = verify(circuit, target_matrix(target), tol)
    lines = [
        f"circuit:          {circuit.name or args.circuit}",
        f"target:           {target.value}",
        f"entanglers:       {entangler_count(circuit)}",
        f"phase groups:     {phase_groups(circuit)}",
        f"aligned distance: {report.aligned_distance:.3e}",
        f"raw distance:     {report.raw_distance:.3e}",
        f"aligning phase:   {format_angle(report.aligning_phase)}",
        f"tolerance:        {report.tolerance:.1e}",
        f"result:           {'PASS' if report.passed else 'FAIL'}",
    ]
    if circuit.metadata.get("status"):
        lines.append(f"status:           {circuit.metadata['status']}")
    return CommandResult(
        exit_code=ExitCode.OK if report.passed else ExitCode.FAILED,
        report="\n".join(lines),
        data={"target": target.value, "report": report.model_dump(mode="json")},
    )


def _coupler(kind: CouplerKind, n_qubits: int, relabel) -> CouplerModel:
    if kind != CouplerKind.COUPLING_U:
        return CouplerModel.default_for(kind)
    j = harmonic_coupling_matrix(n_qubits)
    relabel = relabel or default_relabelling(n_qubits)
    if relabel:
        j = relabel_ions(j, relabel)
    return CouplerModel.default_for(kind, j)


def cmd_synthesize(args: argparse.Namespace) -> CommandResult:
    target = resolve_target_name(args.target)
    kind = CouplerKind(args.coupler)
    settings = get_settings()
    problem = SynthesisProblem(
        target_name=target,
        coupler=_coupler(kind, target_qubits(target), _parse_relabel(args.relabel)),
        min_entanglers=args.min_gates,
        max_entanglers=args.max_gates,
        restarts_per_count=settings.SYNTH_RESTARTS if args.restarts is None else args.restarts,
        tolerance=settings.SYNTH_TOLERANCE if args.tol is None else args.tol,
        seed=settings.SYNTH_SEED if args.seed is None else args.seed,
        allow_one_nonglobal=args.allow_one_nonglobal,
        final_layer=FinalLayer(args.final_layer),
        objective_mode=ObjectiveMode(args.objective),
    )
    result = synthesize(problem, workers=args.workers)

    lines = [
        f"target:           {target.value}",
        f"coupler:          {kind.value}",
        f"seed:             {result.seed}",
        f"converged:        {result.converged}",
        f"entanglers:       {result.entangler_count}",
        f"aligned residual: {result.residual_aligned:.3e}",
        f"raw residual:     {result.residual_raw:.3e}",
        f"restarts used:    {result.restarts_used}",
    ]
    for attempt in result.attempts:
        slot = "" if attempt.nonglobal_slot is None else f" nonglobal@{attempt.nonglobal_slot}"
        best = "n/a" if attempt.best_residual is None else f"{attempt.best_residual:.3e}"
        lines.append(f"  N_G={attempt.n_entanglers}{slot}: best {best} after {attempt.restarts_used} restarts")
    lines.append(f"circuit:          {format_circuit(result.circuit)}")
    if args.out and result.converged:
        save_circuit(args.out, result.circuit)
        lines.append(f"written:          {args.out}")
    return CommandResult(
        exit_code=ExitCode.OK if result.converged else ExitCode.FAILED,
        report="\n".join(lines),
        data={"result": result.model_dump(mode="json")},
    )


def cmd_couplings(args: argparse.Namespace) -> CommandResult:
    spec = TrapSpec(**{**_load_json(args.config), **({"n_ions": args.ions} if args.ions else {})})
    relabel = _parse_relabel(args.relabel) or default_relabelling(spec.n_ions)
    trap_order = harmonic_coupling_matrix(spec.n_ions)
    dimensionless = trap_order
    physical = magic_couplings(spec)
    if relabel:
        dimensionless = relabel_ions(trap_order, relabel)
        physical = relabel_ions(physical, relabel)

    lines = [f"ions: {spec.n_ions}" + (f"  relabelled {','.join(map(str, relabel))}" if relabel else "")]
    if relabel:
        lines.append("dimensionless J in trap order:")
        lines.extend("  " + "  ".join(f"{x:.6f}" for x in row) for row in trap_order)
    lines.append("dimensionless J = (A^-1)_jk:")
    lines.extend("  " + "  ".join(f"{x:.6f}" for x in row) for row in dimensionless)
    lines.append(f"physical J (rad/s), b = {spec.gradient_b} T/m:")
    lines.extend("  " + "  ".join(f"{x:.6e}" for x in row) for row in physical)
    if args.out:
        np.savetxt(args.out, physical, header=f"J_jk in rad/s, {spec.n_ions} ions")
        lines.append(f"written: {args.out}")
    return CommandResult(
        exit_code=ExitCode.OK,
        report="\n".join(lines),
        data={
            "trap": spec.model_dump(mode="json"),
            "relabel": list(relabel) if relabel else None,
            "trap_order": trap_order.tolist(),
            "dimensionless": dimensionless.tolist(),
            "physical": physical.tolist(),
        },
    )


def _bichromatic(args: argparse.Namespace) -> BichromaticParams:
    config = _load_json(args.config)
    for field, value in (("delta", args.delta), ("n_ions", args.ions), ("basis", args.basis)):
        if value is not None:
            config[field] = value
    if getattr(args, "cutoff", None) is not None:
        config["fock_cutoff"] = args.cutoff
    if args.phi is not None:
        if args.g is not None:
            raise UsageError("give --g or --phi, not both")
        try:
            phi = parse_angle(args.phi)
        except ValueError as exc:
            raise UsageError(f"--phi: {exc}") from None
        config["g"] = coupling_for_angle(phi, config.get("delta", 1.0))
    elif args.g is not None:
        config["g"] = args.g
    config.setdefault("delta", 1.0)
    if "g" not in config:
        raise UsageError("--g or --phi is required")
    return BichromaticParams(**config)


def cmd_sm_gate(args: argparse.Namespace) -> CommandResult:
    params = _bichromatic(args)
    u = sm_propagator(params)
    phi = gate_angle(params.g, params.delta)
    lines = [
        f"ions: {params.n_ions}  basis: {params.basis.value}  g: {params.g:.6g}  delta: {params.delta:.6g}",
        f"gate angle phi = 4 pi g^2 / delta^2 = {format_angle(phi)}",
        f"unitary: {is_unitary(u, get_settings().UNITARITY_TOLERANCE)}",
        format_matrix_rows(u),
    ]
    if args.out:
        write_matrix(args.out, u)
        lines.append(f"written: {args.out}")
    return CommandResult(
        exit_code=ExitCode.OK,
        report="\n".join(lines),
        data={"params": params.model_dump(mode="json"), "phi": phi, "matrix": matrix_to_pairs(u)},
    )


def cmd_fock_check(args: argparse.Namespace) -> CommandResult:
    params = _bichromatic(args)
    outcome = fock_simulate(params, params.gate_time, n_steps=args.steps)
    closed = sm_propagator(params)
    deviation = float(np.max(np.abs(pairs_to_matrix(outcome.spin_block) - closed)))
    ok = deviation < FOCK_TOLERANCE and outcome.motional_purity > 1 - FOCK_TOLERANCE
    lines = [
        f"ions: {params.n_ions}  basis: {params.basis.value}  g: {params.g:.6g}  delta: {params.delta:.6g}  cutoff: {params.fock_cutoff}",
        f"steps:            {outcome.steps}",
        f"max deviation:    {deviation:.3e}",
        f"aligned distance: {phase_aligned_distance(closed, pairs_to_matrix(outcome.spin_block)):.3e}",
        f"motional purity:  {outcome.motional_purity:.12f}",
        f"tail population:  {outcome.max_tail_population:.3e}",
        f"norm drift:       {outcome.norm_drift:.3e}",
        f"result:           {'PASS' if ok else 'FAIL'}",
    ]
    return CommandResult(
        exit_code=ExitCode.OK if ok else ExitCode.FAILED,
        report="\n".join(lines),
        data={"deviation": deviation, "simulation": outcome.model_dump(mode="json")},
    )


def cmd_catalog_list(args: argparse.Namespace) -> CommandResult:
    lines, rows = [], []
    for key in catalog_keys():
        entry = catalog_entry(key)
        count = entangler_count(entry.circuit)
        lines.append(f"{key:<26} {entry.target.value:<9} entanglers={count:<2} status={entry.status}")
        rows.append({"key": key, "target": entry.target.value, "entanglers": count, "status": entry.status})
    return CommandResult(exit_code=ExitCode.OK, report="\n".join(lines), data={"entries": rows})


def cmd_catalog_export(args: argparse.Namespace) -> CommandResult:
    entry = catalog_entry(args.key)
    path = save_circuit(args.out, entry.circuit)
    return CommandResult(
        exit_code=ExitCode.OK,
        report=f"{args.key} -> {path}",
        data={"key": args.key, "path": str(path)},
    )


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------
def _add_bichromatic_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--g", type=float, help="coupling rate g")
    parser.add_argument("--phi", help="gate angle instead of --g, e.g. pi/4")
    parser.add_argument("--delta", type=float, help="detuning delta (default 1)")
    parser.add_argument("--ions", type=int, help="number of ions (default 3)")
    parser.add_argument("--basis", choices=[b.value for b in SpinBasis], help="spin basis (default x)")
    parser.add_argument("--config", help="JSON file with BichromaticParams fields")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="globalgates", description="Global entangling-gate circuits.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--json", action="store_true", help="print the machine-readable result")
    parser.add_argument("--log-level", help="root log level (default from settings)")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("verify", help="compare a circuit with a target gate")
    p.add_argument("--catalog", help="catalog key")
    p.add_argument("--circuit", help="circuit file (.qc.json)")
    p.add_argument("--target", help="target gate name")
    p.add_argument("--tol", type=float, help="aligned-distance tolerance")
    p.set_defaults(handler=cmd_verify)

    p = commands.add_parser("synthesize", help="search for a circuit with few entanglers")
    p.add_argument("--target", required=True, help="target gate name")
    p.add_argument("--coupler", required=True, choices=[k.value for k in CouplerKind])
    p.add_argument("--min-gates", type=int, default=1)
    p.add_argument("--max-gates", type=int, required=True)
    p.add_argument("--restarts", type=int, help="restarts per entangler count")
    p.add_argument("--tol", type=float, help="convergence threshold")
    p.add_argument("--seed", type=int, help="generator seed")
    p.add_argument("--workers", type=int, help="thread workers for restarts")
    p.add_argument("--allow-one-nonglobal", action="store_true")
    p.add_argument("--final-layer", choices=[f.value for f in FinalLayer], default=FinalLayer.PHASE.value)
    p.add_argument("--objective", choices=[m.value for m in ObjectiveMode], default=ObjectiveMode.ALIGNED_SQUARED.value)
    p.add_argument("--relabel", help="ion relabelling for coupling-u (default 2,1,3 for three ions)")
    p.add_argument("--out", help="circuit file written on convergence")
    p.set_defaults(handler=cmd_synthesize)

    physics = commands.add_parser("physics", help="trapped-ion realizations").add_subparsers(
        dest="physics_command", required=True
    )
    p = physics.add_parser("couplings", help="MAGIC couplings in a harmonic trap")
    p.add_argument("--ions", type=int)
    p.add_argument("--relabel", help="new label of each ion, e.g. 1,2,3 for trap order (default 2,1,3 for three ions)")
    p.add_argument("--config", help="JSON file with TrapSpec fields")
    p.add_argument("--out", help="text file for the physical J matrix")
    p.set_defaults(handler=cmd_couplings)

    p = physics.add_parser("sm-gate", help="bichromatic gate propagator")
    _add_bichromatic_options(p)
    p.add_argument("--out", help="matrix text file")
    p.set_defaults(handler=cmd_sm_gate)

    p = physics.add_parser("fock-check", help="closed form against the Fock-space integration")
    _add_bichromatic_options(p)
    p.add_argument("--cutoff", type=int, help="Fock cutoff (default 20)")
    p.add_argument("--steps", type=int, help="integration steps (default per settings)")
    p.set_defaults(handler=cmd_fock_check)

    catalog = commands.add_parser("catalog", help="catalog circuits").add_subparsers(
        dest="catalog_command", required=True
    )
    p = catalog.add_parser("list")
    p.set_defaults(handler=cmd_catalog_list)
    p = catalog.add_parser("export")
    p.add_argument("key")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_catalog_export)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> CommandResult:
    """Parse and execute; never raises."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else ExitCode.USAGE
        return CommandResult(exit_code=ExitCode(code) if code in (0, 2) else ExitCode.USAGE)

    configure_logging(level=args.log_level)
    try:
        return args.handler(args)
    except (GlobalGatesError, ValidationError, OSError, json.JSONDecodeError) as exc:
        logger.error("%s: %s", args.command, exc)
        return CommandResult(exit_code=ExitCode.USAGE, report=f"error: {exc}")
    except Exception as exc:
        logger.exception("%s: internal error", args.command)
        return CommandResult(exit_code=ExitCode.INTERNAL, report=f"internal error: {exc}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    json_output = "--json" in (sys.argv[1:] if argv is None else argv)
    result = run(argv)
    if json_output:
        print(result.model_dump_json(indent=2))
    elif result.report:
        stream = sys.stdout if result.exit_code in (ExitCode.OK, ExitCode.FAILED) else sys.stderr
        print(result.report, file=stream)
    return int(result.exit_code)
