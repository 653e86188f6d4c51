"""Command-line front end: JSON jobs in, deterministic JSON reports out.

Exit codes: 0 when every assertion passes, 1 when an assertion fails,
2 on malformed input (bad JSON, schema violations, bad flags).
"""

from __future__ import annotations

import argparse
import hashlib
import sys

import numpy as np

from . import __version__, formats
from .applications.bell import chsh_scenario, mermin3_scenario, optimize_bell
from .applications.selftest import selftest_counterexample
from .dynamics import REALNESS_TOL, Hamiltonian, trajectory
from .encoding import (
    SINGLE_ANCILLA,
    DensityOperator,
    Layout,
    PureState,
    decode_state,
    encode_density,
    encode_operator,
    encode_state,
    encoded_povm_probabilities,
    povm_probabilities,
)
from .formats import FormatError
from .multipartite import encode_multipartite_state, stabilizer_check


def _leq(name: str, measured, tolerance) -> dict:
    return {
        "name": name,
        "passed": bool(float(measured) <= float(tolerance)),
        "measured": float(measured),
        "tolerance": float(tolerance),
    }


def _encode_any(state: PureState, k: int):
    if k > 1:
        return encode_multipartite_state(state, k)
    return encode_state(state)


def cmd_encode(args):
    state = formats.load_state(args.state)
    enc = _encode_any(state, args.k)
    decoded = decode_state(enc)
    results = {
        "source_dims": list(state.factor_dims),
        "layout_k": enc.layout.k,
        "encoded_amplitudes": [float(x) for x in enc.amplitudes],
    }
    assertions = [
        _leq("norm_preserved", abs(float(np.linalg.norm(enc.amplitudes)) - 1.0), 1e-12),
        _leq("round_trip", float(np.max(np.abs(decoded - state.amplitudes))), 1e-12),
    ]
    return results, assertions, [args.state]


def cmd_evolve(args):
    h = Hamiltonian(formats.load_matrix(args.hamiltonian))
    state = formats.load_state(args.state)
    layout = Layout(args.k) if args.k > 1 else SINGLE_ANCILLA
    sign = 1 if args.sign == "plus" else -1
    res = trajectory(h, state, args.t_max, args.steps, layout, sign, strict=False)
    results = {
        "times": [float(t) for t in res.times],
        "max_imag": res.max_imag,
        "max_deviation": res.max_deviation,
        "group_law_error": res.group_law_error,
        "final_complex": formats.complex_pairs(res.complex_states[-1].amplitudes),
        "final_encoded": [float(x) for x in res.encoded_states[-1].amplitudes],
    }
    assertions = [
        _leq("propagator_real", res.max_imag, REALNESS_TOL),
        _leq("matches_complex_evolution", res.max_deviation, args.tol),
        _leq("group_law", res.group_law_error, args.tol),
    ]
    return results, assertions, [args.hamiltonian, args.state]


def cmd_measure(args):
    state = formats.load_state_or_density(args.state)
    povm = formats.load_povm(args.povm)
    probs = povm_probabilities(state, povm)
    elements = [encode_operator(e) for e in povm.elements]
    if isinstance(state, DensityOperator):
        encoded_probs = encoded_povm_probabilities(encode_density(state), elements)
    else:
        encoded_probs = encoded_povm_probabilities(encode_state(state), elements)
    results = {
        "probabilities": [float(p) for p in probs],
        "encoded_probabilities": [float(p) for p in encoded_probs],
    }
    assertions = [
        _leq("encoded_matches_complex", float(np.max(np.abs(probs - encoded_probs))), 1e-12),
        _leq("complex_normalized", abs(float(np.sum(probs)) - 1.0), 1e-10),
        _leq("encoded_normalized", abs(float(np.sum(encoded_probs)) - 1.0), 1e-10),
    ]
    return results, assertions, [args.state, args.povm]


def cmd_bell(args):
    if args.seed is None:
        raise FormatError("--seed is required: bell restarts are stochastic and never seeded from the clock")
    files = []
    if args.scenario_file is not None:
        scenario = formats.load_scenario(args.scenario_file)
        files.append(args.scenario_file)
    elif args.scenario == "chsh":
        scenario = chsh_scenario()
    elif args.scenario == "mermin3":
        scenario = mermin3_scenario()
    else:
        raise FormatError("choose a built-in --scenario or give --scenario-file")
    seeds = [args.seed + i for i in range(args.restarts)]
    result = optimize_bell(scenario, seeds, args.iterations)
    results = {"classical_bound": scenario.classical_bound}
    if scenario.quantum_target is not None:
        results["quantum_target"] = scenario.quantum_target
    if args.mode in ("complex", "both"):
        results["value_complex"] = result.value_complex
    if args.mode in ("real_encoded", "both"):
        results["value_real_encoded"] = result.value_real_encoded
    results["optimizer_trace"] = [[i, v] for i, v in result.optimizer_trace]
    assertions = []
    if args.mode == "both":
        assertions.append(_leq("modes_agree", abs(result.value_complex - result.value_real_encoded), 1e-10))
    if scenario.quantum_target is not None:
        target = scenario.quantum_target
        if args.mode in ("complex", "both"):
            assertions.append(_leq("reaches_target_complex", target - result.value_complex, 1e-6))
        if args.mode in ("real_encoded", "both"):
            assertions.append(_leq("reaches_target_real_encoded", target - result.value_real_encoded, 1e-6))
    return results, assertions, files


def cmd_selftest(args):
    files = []
    gate = None
    if args.gate is not None:
        gate = formats.load_matrix(args.gate)
        files.append(args.gate)
    transcript = selftest_counterexample(gate)
    witness = transcript.inner_product_witness
    results = {
        "max_stat_gap": transcript.max_stat_gap,
        "witness_state_a": formats.complex_pairs(witness.state_a),
        "witness_state_b": formats.complex_pairs(witness.state_b),
        "witness_real_part": witness.real_part,
        "witness_modulus": witness.modulus,
        "product_state_gap": transcript.product_state_gap,
        "statistics_logical": transcript.statistics_logical,
        "statistics_simulated": transcript.statistics_simulated,
    }
    assertions = [_leq("statistics_match", transcript.max_stat_gap, 1e-12)]
    return results, assertions, files


def cmd_stabilizer(args):
    report = stabilizer_check(args.k)
    results = {
        "k": report.k,
        "generator_error": report.generator_error,
        "fixed_subspace_dim": report.fixed_subspace_dim,
    }
    assertions = [
        _leq("generator_action", report.generator_error, 1e-12),
        _leq("codespace_dimension_is_2", abs(report.fixed_subspace_dim - 2), 0.0),
    ]
    return results, assertions, []


_COMMANDS = {
    "encode": (cmd_encode, ("k", "tol")),
    "evolve": (cmd_evolve, ("t_max", "steps", "sign", "k", "tol")),
    "measure": (cmd_measure, ("tol",)),
    "bell": (cmd_bell, ("scenario", "scenario_file", "mode", "restarts", "seed", "iterations", "tol")),
    "selftest": (cmd_selftest, ("tol",)),
    "stabilizer": (cmd_stabilizer, ("k", "tol")),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="realsim",
        description="Simulate complex-amplitude quantum mechanics with real amplitudes only.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--tol", type=float, default=1e-10, help="comparison tolerance (default 1e-10)")
        sp.add_argument("--verbose", action="store_true", help="also print an assertion table to stderr")

    sp = sub.add_parser("encode", help="encode a complex state file into real amplitudes")
    sp.add_argument("state", help="complex vector JSON file")
    sp.add_argument("--k", type=int, default=1, help="ancilla qubits, one per party when > 1 (default 1)")
    common(sp)

    sp = sub.add_parser("evolve", help="evolve a state under a Hamiltonian on both sides")
    sp.add_argument("hamiltonian", help="Hermitian matrix JSON file")
    sp.add_argument("state", help="complex vector JSON file")
    sp.add_argument("--t-max", type=float, default=1.0, help="end of the time grid (default 1.0)")
    sp.add_argument("--steps", type=int, default=64, help="grid points (default 64)")
    sp.add_argument("--sign", choices=("plus", "minus"), default="plus",
                    help="sign convention: plus evolves with exp(+iHt), minus with exp(-iHt) (default plus)")
    sp.add_argument("--k", type=int, default=1, help="ancilla qubits, one per party when > 1 (default 1)")
    common(sp)

    sp = sub.add_parser("measure", help="POVM statistics, complex versus encoded")
    sp.add_argument("state", help="complex vector or density matrix JSON file")
    sp.add_argument("povm", help="POVM JSON file ({\"elements\": [matrix, ...]})")
    common(sp)

    sp = sub.add_parser("bell", help="optimize a Bell expression by seeded see-saw restarts")
    sp.add_argument("--scenario", choices=("chsh", "mermin3"), default="chsh",
                    help="built-in scenario (default chsh)")
    sp.add_argument("--scenario-file", default=None, help="scenario JSON file, overrides --scenario")
    sp.add_argument("--mode", choices=("complex", "real_encoded", "both"), default="both",
                    help="which side evaluates the value (default both)")
    sp.add_argument("--restarts", type=int, default=20, help="optimizer restarts (default 20)")
    sp.add_argument("--seed", type=int, default=None, help="base seed, required (restart r uses seed + r)")
    sp.add_argument("--iterations", type=int, default=100, help="see-saw iterations per restart (default 100)")
    common(sp)

    sp = sub.add_parser("selftest", help="statistics-preserving real simulation of a gate protocol")
    sp.add_argument("gate", nargs="?", default=None,
                    help="2x2 unitary JSON file (default diag(1, i))")
    common(sp)

    sp = sub.add_parser("stabilizer", help="check the logical ancilla codespace on k qubits")
    sp.add_argument("--k", type=int, required=True, help="ancilla qubits, 2 to 6")
    common(sp)

    return parser


def _digest(command: str, options: dict, paths: list) -> str:
    file_hashes = []
    for path in paths:
        with open(path, "rb") as fh:
            file_hashes.append(hashlib.sha256(fh.read()).hexdigest())
    payload = formats.dumps({
        "command": command,
        "options": {k: options[k] for k in sorted(options)},
        "files": file_hashes,
    })
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else 0
    handler, option_keys = _COMMANDS[args.command]
    try:
        results, assertions, files = handler(args)
        digest = _digest(args.command, {k: getattr(args, k) for k in option_keys}, files)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    report = {
        "command": args.command,
        "inputs_digest": digest,
        "results": results,
        "assertions": assertions,
        "versions": __version__,
    }
    sys.stdout.write(formats.dumps(report) + "\n")
    if args.verbose:
        width = max(len(a["name"]) for a in assertions) if assertions else 4
        for a in assertions:
            status = "PASS" if a["passed"] else "FAIL"
            print(f"{a['name']:<{width}}  {status}  measured={a['measured']:.3e}  tolerance={a['tolerance']:.3e}",
                  file=sys.stderr)
    return 0 if all(a["passed"] for a in assertions) else 1


def entrypoint() -> None:
    raise SystemExit(main())
