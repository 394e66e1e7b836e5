"""
Command line: bench, audit, party and dealer subcommands.

Exit codes: 0 ok, 2 verification failed or proving refused, 3 protocol
abort, 4 usage error.
"""

import argparse
import itertools
import sys

import structlog

from Bulletproofs.CollaborativeProver import CommitMode
from Bulletproofs.CollaborativeProver import IpaMode
from ProverInterfaces.Audit import MODES
from ProverInterfaces.Audit import AuditScenario
from ProverInterfaces.Audit import run_audit
from ProverInterfaces.Bench import BenchConfiguration
from ProverInterfaces.Bench import phase_summary
from ProverInterfaces.Bench import sweep
from ProverInterfaces.Bench import write_csv
from ProverInterfaces.Party import ROLES
from ProverInterfaces.Party import run_party
from ProverInterfaces.Party import write_bundles
from Transport.Topology import load_topology
from Utility.Configuration import ProverConfiguration
from Utility.Exceptions import CollaborativeProverError
from Utility.Exceptions import PreprocessingExhausted
from Utility.Exceptions import ProtocolAbort
from Utility.Exceptions import UnsatisfiedAssignment
from Utility.Exceptions import UsageError
from Utility.Logging import configure_logging

log = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 2
EXIT_PROTOCOL_ABORT = 3
EXIT_USAGE = 4


class _Parser(argparse.ArgumentParser):

    def error(self, message):
        raise UsageError(message)


def parse_sizes(text):
    """
    "2,8,2^5" -> [2, 8, 32]; "2..64" -> every power of two from 2 to 64.
    """
    sizes = []
    for item in filter(None, (part.strip() for part in text.split(","))):
        try:
            if ".." in item:
                low, high = (int(x) for x in item.split("..", 1))
                size = 1
                while size <= high:
                    if size >= low:
                        sizes.append(size)
                    size *= 2
            elif "^" in item:
                base, exponent = item.split("^", 1)
                sizes.append(int(base) ** int(exponent))
            else:
                sizes.append(int(item))
        except ValueError:
            raise UsageError("cannot read size {!r}".format(item)) from None
    if not sizes or any(size < 1 for size in sizes):
        raise UsageError("sizes must be positive integers, got {!r}".format(text))
    return sizes


def parse_choices(text, enum):
    try:
        return [enum(item.strip()) for item in text.split(",") if item.strip()]
    except ValueError:
        raise UsageError("{!r} is not a list of {}".format(text, ", ".join(e.value for e in enum))) from None


def build_parser():
    parser = _Parser(prog="run_prover.py", description="Collaborative commit-and-prove Bulletproofs")
    parser.add_argument("--seed", type=int, default=None, help="seed for every random source")
    parser.add_argument("--timeout", type=float, default=None, help="seconds a receive or connect may wait")
    parser.add_argument("--log-level", default=None)
    parser.add_argument("--json-logs", action="store_true")
    subparsers = parser.add_subparsers(dest="command")

    bench = subparsers.add_parser("bench", help="benchmark sweep, writes CSV")
    bench.add_argument("--constraints", default="2", help="gate counts, e.g. 2,16 or 2^5 or 2..1024")
    bench.add_argument("--parties", default="2")
    bench.add_argument("--commit", default="cts", help="cts, stc or both comma-separated")
    bench.add_argument("--ipa", default="local", help="local, distributed or both comma-separated")
    bench.add_argument("--transport", choices=("mem", "tcp"), default="mem")
    bench.add_argument("--inputs", type=int, default=1, help="committed inputs m")
    bench.add_argument("--out", default=None, help="CSV path, stdout when omitted")
    bench.add_argument("--no-progress", action="store_true")
    bench.set_defaults(func=cmd_bench)

    audit = subparsers.add_parser("audit", help="private audit across banks")
    audit.add_argument("--banks", type=int, default=2)
    audit.add_argument("--tx", type=int, default=8)
    audit.add_argument("--threshold", type=int, default=None)
    audit.add_argument("--margin", type=int, default=1, help="threshold = sum - margin when --threshold is absent")
    audit.add_argument("--mode", choices=MODES + ("both",), default="composed")
    audit.add_argument("--value-bits", type=int, default=64)
    audit.add_argument("--out", default=None)
    audit.set_defaults(func=cmd_audit)

    party = subparsers.add_parser("party", help="run one party over TCP")
    party.add_argument("--id", type=int, required=True)
    party.add_argument("--config", required=True, help="topology file")
    party.add_argument("--role", choices=ROLES, default="bench")
    party.add_argument("--bundle", default=None, help="dealer bundle for this party")
    party.add_argument("--constraints", type=int, default=2)
    party.add_argument("--commit", choices=[m.value for m in CommitMode], default="cts")
    party.add_argument("--ipa", choices=[m.value for m in IpaMode], default="local")
    party.add_argument("--inputs", type=int, default=1)
    party.add_argument("--out", default=None, help="write the proof bytes here")
    party.set_defaults(func=cmd_party)

    dealer = subparsers.add_parser("dealer", help="write per-party preprocessing bundles")
    dealer.add_argument("--parties", type=int, required=True)
    dealer.add_argument("--constraints", type=int, default=2)
    dealer.add_argument("--commit", choices=[m.value for m in CommitMode], default="cts")
    dealer.add_argument("--ipa", choices=[m.value for m in IpaMode], default="local")
    dealer.add_argument("--inputs", type=int, default=1)
    dealer.add_argument("--out-dir", required=True)
    dealer.set_defaults(func=cmd_dealer)
    return parser


def cmd_bench(args, config):
    configs = [BenchConfiguration(n, parties, commit_mode, ipa_mode, args.transport, args.inputs)
               for n, parties, commit_mode, ipa_mode in itertools.product(
                   parse_sizes(args.constraints), parse_sizes(args.parties),
                   parse_choices(args.commit, CommitMode), parse_choices(args.ipa, IpaMode))]
    records = sweep(configs, seed=config.make_rng().getrandbits(64), timeout=config.timeout, progress=not args.no_progress)
    if args.out:
        with open(args.out, "w", encoding="utf8", newline="") as f:
            write_csv(records, f)
    else:
        write_csv(records, sys.stdout)
    for phase, stats in phase_summary(records).items():
        log.info("phase_summary", phase=phase, mean_ms=round(stats["mean"], 1), median_ms=round(stats["median"], 1))
    return EXIT_OK if all(r.verify_ok for r in records) else EXIT_VERIFY_FAILED


def cmd_audit(args, config):
    rng = config.make_rng()
    seed = rng.getrandbits(64)
    scenario = AuditScenario.generate(args.banks, args.tx, rng, threshold=args.threshold,
                                      margin=args.margin, value_bits=args.value_bits)
    records, accepted = [], True
    for mode in (MODES if args.mode == "both" else (args.mode,)):
        try:
            report = run_audit(scenario, mode, seed=seed, timeout=config.timeout, mask_bits=config.mask_bits)
        except UnsatisfiedAssignment:
            print("proving refused: net sum {} is below threshold {}".format(scenario.total, scenario.threshold))
            return EXIT_VERIFY_FAILED
        print("{}: {} ({} MPC multiplications, {} messages, {} sum gates)".format(
            mode, "accepted" if report.accepted else "REJECTED", report.multiplications, report.messages, report.sum_gates))
        records.extend(report.records)
        accepted &= report.accepted
    if args.out:
        with open(args.out, "w", encoding="utf8", newline="") as f:
            write_csv(records, f)
    return EXIT_OK if accepted else EXIT_VERIFY_FAILED


def _single_config(args, n_parties):
    return BenchConfiguration(args.constraints, n_parties, CommitMode(args.commit), IpaMode(args.ipa), "tcp", args.inputs)


def cmd_party(args, config):
    try:
        n_parties = len(load_topology(args.config))
    except OSError as error:
        raise UsageError("cannot read topology {}: {}".format(args.config, error)) from None
    if n_parties > 1 and args.bundle is None:
        raise UsageError("--bundle is required with {} parties".format(n_parties))
    output, result = run_party(args.id, args.config, args.bundle, _single_config(args, n_parties), config.seed or 0,
                               config.timeout, role=args.role, mask_bits=config.mask_bits)
    if args.out:
        with open(args.out, "wb") as f:
            f.write(output.proof.to_bytes())
    if result is not None:
        print("verify: {}".format("ok" if result.ok else "failed ({})".format(result.reason)))
        return EXIT_OK if result.ok else EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_dealer(args, config):
    paths = write_bundles(_single_config(args, args.parties), config.seed or 0, args.out_dir, mask_bits=config.mask_bits)
    for path in paths:
        print(path)
    return EXIT_OK


def main(argv=None, environ=None):
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required: bench, audit, party or dealer")
        config = ProverConfiguration.from_env(environ).override(seed=args.seed, timeout=args.timeout,
                                                                log_level=args.log_level and args.log_level.upper())
        configure_logging(config.log_level, json=args.json_logs)
        return args.func(args, config)
    except UsageError as error:
        print("usage error: {}".format(error), file=sys.stderr)
        return EXIT_USAGE
    except UnsatisfiedAssignment as error:
        print("proving refused: {}".format(error), file=sys.stderr)
        return EXIT_VERIFY_FAILED
    except (ProtocolAbort, PreprocessingExhausted) as error:
        print("protocol aborted: {}".format(error), file=sys.stderr)
        return EXIT_PROTOCOL_ABORT
    except CollaborativeProverError as error:
        print("error: {}".format(error), file=sys.stderr)
        return EXIT_PROTOCOL_ABORT
    except ValueError as error:
        print("usage error: {}".format(error), file=sys.stderr)
        return EXIT_USAGE
