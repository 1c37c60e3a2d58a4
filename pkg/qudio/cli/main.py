"""
Command line entry point.

    qudio qnn-train --nodes 16 --local-steps 4 --ideal --dataset-dir ./mnist
    qudio vqe --nodes 2 --local-steps 1 --shots 100
    qudio bias-check -p 0.01 --shots 100 --trials 10000
    qudio bench --sweep 1,2,4 --shots 100 --dataset-dir ./mnist
    qudio fetch-mnist --dataset-dir ./mnist
    qudio make-hamiltonians --hamiltonian-dir ./hamiltonians
    qudio replay runs/qnn-train-0123456789ab/manifest.json

Exit codes: 0 success, 1 usage error, 2 missing or malformed input data, 3 internal invariant violation.
"""

import argparse
import csv
import json
import os
import sys

from .. import config
from ..utils import Logger
from ..utils.argument_check import InvalidArgumentTypeError, InvalidArgumentValueError, InvalidRangeArgumentError
from ..quantum import NoiseModel, build_qnn_ansatz
from ..hamiltonian import HamiltonianParseError, Hamiltonian, load_hamiltonian, hamiltonian_path, exact_ground_energy, write_h2_hamiltonians
from ..datasets import IDXFormatError, IDXLengthError, InsufficientDataError, load_mnist, fetch_mnist, distill
from ..datasets.idx import locate_mnist_file
from ..gradients import QnnLossSpec, VqeSpec
from ..engine import GlobalConfig, Workload, QnnProblem, VqeProblem, run_qudio, InvariantViolationError, NodeFailureError
from ..diagnostics import utility_R1, speedup_metrics, bias_sweep, sweep_pass_rate
from .manifest import RunManifest, MANIFEST_FILENAME

EXIT_SUCCESS = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3

DEFAULT_OUTPUT_ROOT = "runs"
NOT_REACHED = "not reached"

class UsageError(Exception):
    pass

class QudioArgumentParser(argparse.ArgumentParser):
    """argparse parser raising UsageError instead of exiting with status 2"""
    def error(self, message):
        raise UsageError(message)

USAGE_ERRORS = (UsageError, InvalidArgumentTypeError, InvalidArgumentValueError, InvalidRangeArgumentError)
DATA_ERRORS = (OSError, IDXFormatError, IDXLengthError, HamiltonianParseError, InsufficientDataError, Hamiltonian.EmptyHamiltonianError)
INTERNAL_ERRORS = (InvariantViolationError, NodeFailureError)

##### Flag parsing #####

def float_list(text : str) -> list:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of numbers, got '{text}'")

def int_list(text : str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got '{text}'")

def add_noise_flags(parser, allow_ideal : bool = True):
    parser.add_argument("-K", "--shots", type=int, default=None, help=f"measurements per expectation estimate (default {config.SHOTS})")
    parser.add_argument("-p", "--depolarize", "--p", dest="depolarize", type=float, default=None, help="depolarization rate per circuit layer (default 0)")
    if allow_ideal:
        parser.add_argument("--ideal", action="store_true", help="exact expectations, no depolarization")

def add_training_flags(parser):
    parser.add_argument("-Q", "--nodes", type=int, default=1, help="number of local nodes")
    parser.add_argument("-W", "--local-steps", type=int, default=1, help="local steps between synchronizations")
    parser.add_argument("-T", "--global-steps", type=int, default=None, help="number of global rounds (default depends on the workload)")
    add_noise_flags(parser)
    parser.add_argument("--lr", type=float, default=None, help="initial learning rate (default depends on the workload)")
    parser.add_argument("--momentum", type=float, default=config.MOMENTUM)
    parser.add_argument("--decay-factor", type=float, default=None)
    parser.add_argument("--decay-period", type=int, default=config.DECAY_PERIOD)
    parser.add_argument("--lambda", dest="regularization", type=float, default=0., help="regularization strength (image classification only)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--executor", choices=["process", "thread", "serial"], default="process")
    parser.add_argument("--workers", type=int, default=None, help="size of the worker pool (default min(Q, cpu count))")
    parser.add_argument("--carry-momentum", action="store_true", help="keep momentum buffers across synchronizations")
    parser.add_argument("--batch-size", type=int, default=1, help="examples per local step (image classification only)")
    parser.add_argument("--no-grad-norm", action="store_true", help="skip the evaluation of ||∇L||^2 at every round")

def add_dataset_flags(parser):
    parser.add_argument("--dataset-dir", type=str, default=None, help=f"MNIST directory (default ${config.DATA_ENV_VAR})")
    parser.add_argument("--train-count", type=int, default=config.QNN_TRAIN_COUNT)
    parser.add_argument("--test-count", type=int, default=config.QNN_TEST_COUNT)
    parser.add_argument("--no-balance", action="store_true", help="draw examples regardless of their class")

def add_output_flags(parser):
    parser.add_argument("--out", type=str, default=None, help=f"output directory (default {DEFAULT_OUTPUT_ROOT}/<command>-<run id>)")
    parser.add_argument("--quiet", action="store_true")

def resolve_noise(args) -> NoiseModel:
    ideal = getattr(args, "ideal", False)
    if ideal and (args.shots is not None or args.depolarize is not None):
        raise UsageError("--ideal cannot be combined with --shots or --depolarize")
    if ideal:
        return NoiseModel()
    shots = config.SHOTS if args.shots is None else args.shots
    p = 0. if args.depolarize is None else args.depolarize
    if shots < 1:
        raise UsageError(f"--shots should be >= 1, got {shots}")
    if not 0. <= p <= 1.:
        raise UsageError(f"--depolarize should be in [0,1], got {p}")
    return NoiseModel(p, shots)

def resolve_config(args, workload : Workload) -> GlobalConfig:
    """Builds and validates the GlobalConfig of a run. Flags left unset fall back on the workload defaults."""
    kwargs = dict(
        Q = args.nodes, W = args.local_steps,
        momentum = args.momentum, decay_period = args.decay_period,
        regularization = args.regularization,
        noise = resolve_noise(args),
        seed = args.seed, executor = args.executor, workers = args.workers,
        carry_momentum = args.carry_momentum, batch_size = args.batch_size,
        record_grad_norm = not args.no_grad_norm,
    )
    for key, value in (("T", args.global_steps), ("learning_rate", args.lr), ("decay_factor", args.decay_factor)):
        if value is not None:
            kwargs[key] = value
    if workload == Workload.VQE and args.regularization != 0.:
        raise UsageError("--lambda only applies to image classification")
    return GlobalConfig.for_workload(workload, **kwargs).validate()

def dataset_directory(args) -> str:
    directory = args.dataset_dir or os.environ.get(config.DATA_ENV_VAR)
    if not directory:
        raise UsageError(f"no dataset directory: pass --dataset-dir or set {config.DATA_ENV_VAR}")
    return directory

def output_directory(args, manifest : RunManifest) -> str:
    out = args.out or os.path.join(DEFAULT_OUTPUT_ROOT, f"{manifest.subcommand}-{manifest.run_id}")
    os.makedirs(out, exist_ok=True)
    return out

def make_manifest(subcommand : str, argv : list, args, global_config : GlobalConfig = None) -> RunManifest:
    options = {k:v for k,v in vars(args).items() if k not in ("func", "out", "quiet")}
    cfg = {"options" : options}
    if global_config is not None:
        cfg["global"] = global_config.to_dict()
    return RunManifest(subcommand, list(argv), cfg)

##### Shared steps #####

def load_distilled_mnist(args, logger : Logger, manifest : RunManifest = None) -> tuple:
    directory = dataset_directory(args)
    try:
        train_raw, test_raw = load_mnist(directory)
    except FileNotFoundError:
        logger.log(f"MNIST not found in {directory}, downloading")
        fetch_mnist(directory, verbose=logger.verbose)
        train_raw, test_raw = load_mnist(directory)
    if manifest is not None:
        for name in config.MNIST_FILES.values():
            manifest.add_input(locate_mnist_file(directory, name))
    train, test = distill(train_raw, test_raw, args.train_count, args.test_count, seed=args.seed, balanced=not args.no_balance)
    logger.log(f"Distilled {len(train)} training and {len(test)} test examples")
    return train, test

def qnn_spec(regularization : float) -> QnnLossSpec:
    return QnnLossSpec(build_qnn_ansatz(config.QNN_N_QUBITS, config.QNN_N_BLOCKS), regularization)

def load_vqe_spec(directory : str, distance : float, manifest : RunManifest = None) -> VqeSpec:
    path = hamiltonian_path(directory, distance)
    h = load_hamiltonian(path)
    if manifest is not None:
        manifest.add_input(path)
    return VqeSpec(h)

def safe_R1(trace):
    try:
        return utility_R1(trace)
    except InvalidArgumentValueError:
        return None

def finish(manifest : RunManifest, out : str, logger : Logger) -> int:
    path = manifest.save(out)
    logger.log(f"Manifest written to {path}")
    return EXIT_SUCCESS

##### Subcommands #####

def cmd_qnn_train(args, argv : list) -> int:
    cfg = resolve_config(args, Workload.QNN)
    logger = Logger("qnn-train", not args.quiet)
    manifest = make_manifest("qnn-train", argv, args, cfg)
    train, test = load_distilled_mnist(args, logger, manifest)
    problem = QnnProblem.build(qnn_spec(cfg.regularization), train, test, cfg.Q, cfg.seed)
    trace = run_qudio(cfg, problem, verbose=not args.quiet)

    out = output_directory(args, manifest)
    trace_path, summary_path = os.path.join(out, "trace.csv"), os.path.join(out, "summary.json")
    trace.save_csv(trace_path)
    trace.save_json(summary_path, extra={"utility_R1" : safe_R1(trace), "run_id" : manifest.run_id})
    manifest.add_output(trace_path)
    manifest.add_output(summary_path)
    logger.log(f"Final test accuracy {trace.metric[-1]:.4f} after {trace.n_rounds} rounds ({trace.wall_clock[-1]:.2f}s)")
    return finish(manifest, out, logger)

def cmd_vqe(args, argv : list) -> int:
    cfg = resolve_config(args, Workload.VQE)
    logger = Logger("vqe", not args.quiet)
    manifest = make_manifest("vqe", argv, args, cfg)
    specs = [(d, load_vqe_spec(args.hamiltonian_dir, d, manifest)) for d in args.bond_distances]

    out = output_directory(args, manifest)
    rows = []
    for distance, spec in specs:
        trace = run_qudio(cfg, VqeProblem.build(spec, cfg.Q, cfg.seed), verbose=not args.quiet)
        exact = exact_ground_energy(spec.hamiltonian)
        final = trace.metric[-1]
        rows.append({"distance" : distance, "final_energy" : final, "exact_energy" : exact, "error" : abs(final - exact), "utility_R1" : safe_R1(trace)})
        trace_path = os.path.join(out, f"trace_{distance:.2f}A.csv")
        trace.save_csv(trace_path)
        manifest.add_output(trace_path)
        logger.log(f"d={distance:.2f}A: E={final:.6f} exact={exact:.6f} error={abs(final-exact):.2e}")

    surface_path = os.path.join(out, "energies.csv")
    with open(surface_path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(("distance", "final_energy", "exact_energy", "error"))
        for r in rows:
            writer.writerow((repr(r["distance"]), repr(float(r["final_energy"])), repr(float(r["exact_energy"])), repr(float(r["error"]))))
    summary_path = os.path.join(out, "summary.json")
    with open(summary_path, "w", encoding="utf-8") as f:
        json.dump({"run_id" : manifest.run_id, "config" : cfg.to_dict(), "distances" : rows}, f, indent=2)
    manifest.add_output(surface_path)
    manifest.add_output(summary_path)
    return finish(manifest, out, logger)

def cmd_bias_check(args, argv : list) -> int:
    if args.trials < 2:
        raise UsageError(f"--trials should be >= 2, got {args.trials}")
    if args.configs < 1:
        raise UsageError(f"--configs should be >= 1, got {args.configs}")
    noise = resolve_noise(args)
    logger = Logger("bias-check", not args.quiet)
    manifest = make_manifest("bias-check", argv, args)
    reports = bias_sweep(args.configs, ps=(noise.p,), shots=(noise.shots,), trials=args.trials, seed=args.seed,
        n_qubits=args.n_qubits, n_blocks=args.n_blocks, regularization=args.regularization, verbose=not args.quiet)

    out = output_directory(args, manifest)
    report_path = os.path.join(out, "bias_report.json")
    rate = sweep_pass_rate(reports)
    published_rate = sweep_pass_rate(reports, published=True)
    with open(report_path, "w", encoding="utf-8") as f:
        json.dump({"run_id" : manifest.run_id, "pass_rate" : rate, "published_pass_rate" : published_rate, "reports" : [r.to_dict() for r in reports]}, f, indent=2)
    manifest.add_output(report_path)
    logger.log(f"{len(reports)} configuration(s), {args.trials} trials each: {100*rate:.1f}% of components pass (published constants: {100*published_rate:.1f}%)")
    return finish(manifest, out, logger)

def cmd_bench(args, argv : list) -> int:
    workload = Workload(args.workload)
    cfg = resolve_config(args, workload)
    if any(Q < 1 for Q in args.sweep):
        raise UsageError(f"--sweep values should be >= 1, got {args.sweep}")
    logger = Logger("bench", not args.quiet)
    manifest = make_manifest("bench", argv, args, cfg)

    if workload == Workload.QNN:
        train, test = load_distilled_mnist(args, logger, manifest)
        spec = qnn_spec(cfg.regularization)
        build = lambda Q : QnnProblem.build(spec, train, test, Q, cfg.seed)
        threshold = config.QNN_ACCURACY_THRESHOLD if args.threshold is None else args.threshold
    else:
        spec = load_vqe_spec(args.hamiltonian_dir, args.bond_distances[0], manifest)
        build = lambda Q : VqeProblem.build(spec, Q, cfg.seed)
        threshold = exact_ground_energy(spec.hamiltonian) + config.CHEMICAL_ACCURACY if args.threshold is None else args.threshold

    out = output_directory(args, manifest)
    traces = {}
    for Q in sorted(set(args.sweep)):
        cfg_Q = GlobalConfig.from_dict({**cfg.to_dict(), "Q" : Q}).validate()
        traces[Q] = run_qudio(cfg_Q, build(Q), verbose=not args.quiet)
        trace_path = os.path.join(out, f"trace_Q{Q}.csv")
        traces[Q].save_csv(trace_path)
        manifest.add_output(trace_path)
    metrics = speedup_metrics(traces, threshold, higher_is_better = workload == Workload.QNN)

    table_path = os.path.join(out, "bench.csv")
    fmt = lambda x : NOT_REACHED if x is None else repr(float(x))
    with open(table_path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(("Q", "time_to_threshold_s", "speedup_to_accuracy", "fixed_T_time_s", "fixed_T_speedup"))
        for Q, m in metrics.items():
            writer.writerow((Q, fmt(m["time_to_threshold"]), fmt(m["speedup_to_accuracy"]), fmt(m["fixed_T_time"]), fmt(m["fixed_T_speedup"])))
            logger.log(f"Q={Q}: time to threshold {fmt(m['time_to_threshold'])}, speedup {fmt(m['speedup_to_accuracy'])}, T rounds in {m['fixed_T_time']:.2f}s")
    summary_path = os.path.join(out, "bench.json")
    with open(summary_path, "w", encoding="utf-8") as f:
        json.dump({
            "run_id" : manifest.run_id, "threshold" : threshold, "metric" : "test_accuracy" if workload == Workload.QNN else "energy",
            "note" : "wall-clock ratios depend on the hardware running the simulation",
            "results" : {str(Q) : m for Q,m in metrics.items()},
        }, f, indent=2)
    manifest.add_output(table_path)
    manifest.add_output(summary_path)
    return finish(manifest, out, logger)

def cmd_fetch_mnist(args, argv : list) -> int:
    directory = dataset_directory(args)
    fetch_mnist(directory, verbose=not args.quiet)
    load_mnist(directory) # checks the downloaded files
    return EXIT_SUCCESS

def cmd_make_hamiltonians(args, argv : list) -> int:
    logger = Logger("make-hamiltonians", not args.quiet)
    paths = write_h2_hamiltonians(args.hamiltonian_dir, args.bond_distances)
    for path in paths:
        logger.log(f"Wrote {path}")
    return EXIT_SUCCESS

def cmd_replay(args, argv : list) -> int:
    logger = Logger("replay", not args.quiet)
    manifest = RunManifest.load(args.manifest)
    changed = manifest.changed_inputs()
    if changed:
        logger.warn("inputs changed since the recorded run:", ", ".join(changed))
    replay_argv = list(manifest.argv)
    if "--out" not in replay_argv and args.out is not None:
        replay_argv += ["--out", args.out]
    return run(replay_argv)

##### Parser #####

def build_parser() -> QudioArgumentParser:
    parser = QudioArgumentParser(prog="qudio", description="Distributed training of variational quantum algorithms")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=QudioArgumentParser)

    p = sub.add_parser("qnn-train", help="train the binary MNIST classifier")
    add_training_flags(p)
    add_dataset_flags(p)
    add_output_flags(p)
    p.set_defaults(func=cmd_qnn_train)

    p = sub.add_parser("vqe", help="ground state energies of H2 along the bond distance grid")
    add_training_flags(p)
    p.add_argument("--hamiltonian-dir", type=str, default=config.H2_DATA_DIR, help="defaults to the files shipped with the package")
    p.add_argument("--bond-distances", type=float_list, default=list(config.VQE_BOND_DISTANCES))
    add_output_flags(p)
    p.set_defaults(func=cmd_vqe)

    p = sub.add_parser("bias-check", help="Monte Carlo check of the noisy gradient bias")
    add_noise_flags(p, allow_ideal=False)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--configs", type=int, default=1, help="number of random configurations")
    p.add_argument("--lambda", dest="regularization", type=float, default=0.)
    p.add_argument("--n-qubits", type=int, default=config.QNN_N_QUBITS)
    p.add_argument("--n-blocks", type=int, default=config.QNN_N_BLOCKS)
    p.add_argument("--seed", type=int, default=0)
    add_output_flags(p)
    p.set_defaults(func=cmd_bias_check)

    p = sub.add_parser("bench", help="speedup of a sweep over the number of local nodes")
    add_training_flags(p)
    p.add_argument("--workload", choices=["qnn", "vqe"], default="qnn")
    p.add_argument("--sweep", type=int_list, default=[1, 2, 4], help="numbers of nodes to compare")
    p.add_argument("--threshold", type=float, default=None, help="target accuracy (qnn) or energy (vqe)")
    add_dataset_flags(p)
    p.add_argument("--hamiltonian-dir", type=str, default=config.H2_DATA_DIR, help="defaults to the files shipped with the package")
    p.add_argument("--bond-distances", type=float_list, default=[config.VQE_BOND_DISTANCES[0]])
    add_output_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("fetch-mnist", help="download the MNIST files")
    p.add_argument("--dataset-dir", type=str, default=None)
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_fetch_mnist)

    p = sub.add_parser("make-hamiltonians", help="write the H2 Pauli Hamiltonian files")
    p.add_argument("--hamiltonian-dir", type=str, required=True)
    p.add_argument("--bond-distances", type=float_list, default=list(config.VQE_BOND_DISTANCES))
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_make_hamiltonians)

    p = sub.add_parser("replay", help="re-run the command recorded in a manifest")
    p.add_argument("manifest", type=str, help=f"path to a {MANIFEST_FILENAME}")
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_replay)
    return parser

def run(argv : list) -> int:
    """Parses and runs a command line, letting exceptions through"""
    args = build_parser().parse_args(argv)
    return args.func(args, argv)

def main(argv : list = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    logger = Logger("qudio", True)
    try:
        return run(argv)
    except USAGE_ERRORS as e:
        logger.warn(f"usage error: {e}")
        return EXIT_USAGE
    except INTERNAL_ERRORS as e:
        logger.warn(f"internal error: {e}")
        return EXIT_INTERNAL
    except DATA_ERRORS as e:
        logger.warn(f"input data error: {e}")
        return EXIT_DATA
    except SystemExit as e: # --help
        return e.code if isinstance(e.code, int) else EXIT_SUCCESS
