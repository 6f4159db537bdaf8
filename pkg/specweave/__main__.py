"""CLI entry point for specweave."""

import argparse
import json
import logging
import sys
from pathlib import Path

from .config import Config
from .exceptions import ConnectivityFailure, SpecweaveError
from .main import compare, evaluate, generate, optimize


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with status 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def setup_logging(level: str):
    """Configure logging."""
    logging.basicConfig(
        level=getattr(logging, level.upper()),
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )


def _add_log_level(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--log-level",
        type=str,
        default=Config.LOG_LEVEL,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level",
    )


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with the generate, optimize, compare and evaluate subcommands."""
    parser = _ArgumentParser(
        prog="specweave",
        description="Distributed optimization of Laplacian-spectrum costs on weighted graphs",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python -m specweave generate --n 150 --radius 0.16 --seed 7 --out output/g7.json
  python -m specweave optimize --graph output/g7.json --cost config/cost_eigendiff.json --mode warm --baseline compute
  python -m specweave compare --manifest config/manifest.example.yaml --modes cold,warm
  python -m specweave evaluate --graph output/g7_warm_graph.json --cost config/cost_eigendiff.json
        """,
    )
    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    gen = subparsers.add_parser("generate", help="Generate a connected random geometric graph")
    gen.add_argument("--n", type=int, required=True, help="Vertex count")
    gen.add_argument("--radius", type=float, required=True, help="Connection radius on the unit square")
    gen.add_argument("--seed", type=int, default=0, help="Generator seed (default: 0)")
    gen.add_argument("--out", type=Path, required=True, help="Output graph JSON")
    _add_log_level(gen)

    opt = subparsers.add_parser("optimize", help="Run one optimization")
    opt.add_argument("--graph", type=Path, required=True, help="Graph JSON")
    opt.add_argument("--cost", type=Path, required=True, help="Cost JSON (monomial or eigendiff)")
    opt.add_argument(
        "--mode",
        type=str,
        default="cold",
        choices=["cold", "warm", "centralized", "regularize"],
        help="Run mode (default: cold)",
    )
    opt.add_argument("--iters", type=int, help=f"Outer iterations (default: {Config.ITERATIONS})")
    opt.add_argument("--workers", type=int, help=f"Parallel workers (default: {Config.WORKERS})")
    opt.add_argument("--seed", type=int, default=0, help="Run seed (default: 0)")
    opt.add_argument("--out-prefix", type=Path, help="Output path prefix (default: OUTPUT_DIR/<graph>_<mode>)")
    opt.add_argument(
        "--baseline",
        type=str,
        help="'compute' to run the centralized baseline, or a JSON file holding {\"Jstar\": ...}",
    )
    opt.add_argument("--warm-split", type=float, help=f"Warm-start fraction (default: {Config.WARM_SPLIT})")
    opt.add_argument(
        "--warm-descent",
        type=str,
        choices=["matched", "remainder"],
        help=f"Warm descent iterations: a full cold run's, or what regularization leaves (default: {Config.WARM_DESCENT})",
    )
    opt.add_argument("--gossip-rounds", type=int, help=f"Gossip draws per iteration (default: {Config.GOSSIP_ROUNDS})")
    opt.add_argument(
        "--no-gossip-reinit",
        action="store_true",
        help="Keep one persistent gossip estimate instead of re-seeding each iteration",
    )
    opt.add_argument("--inner-steps", type=int, help=f"Inner descent steps (default: {Config.INNER_STEPS})")
    opt.add_argument("--eval-every", type=int, help=f"Global J cadence (default: {Config.EVAL_EVERY})")
    opt.add_argument("--threads", type=int, help=f"Worker threads (default: {Config.THREADS})")
    opt.add_argument("--scheduling", type=str, choices=["deterministic", "free"], help="Worker result order")
    _add_log_level(opt)

    cmp_ = subparsers.add_parser("compare", help="Compare modes by DOPR across a manifest")
    cmp_.add_argument("--manifest", type=Path, required=True, help="YAML experiment manifest")
    cmp_.add_argument("--modes", type=str, help="Comma-separated modes (default: from manifest)")
    _add_log_level(cmp_)

    ev = subparsers.add_parser("evaluate", help="Report statistics, J and the degree surrogate")
    ev.add_argument("--graph", type=Path, required=True, help="Graph JSON")
    ev.add_argument("--cost", type=Path, required=True, help="Cost JSON")
    _add_log_level(ev)

    return parser


def _print_stats(stats: dict):
    for key, value in stats.items():
        print(f"  {key}: {value:.6g}" if isinstance(value, float) else f"  {key}: {value}")


def main(argv=None):
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        sys.exit(1)

    setup_logging(args.log_level)

    try:
        if args.command == "generate":
            stats = generate(args.n, args.radius, args.seed, args.out)
            print(f"\n✓ Generated graph: {args.out}")
            _print_stats(stats)

        elif args.command == "optimize":
            summary, paths = optimize(
                args.graph,
                args.cost,
                mode=args.mode,
                iterations=args.iters,
                workers=args.workers,
                seed=args.seed,
                out_prefix=args.out_prefix,
                baseline=args.baseline,
                warm_split=args.warm_split,
                warm_descent=args.warm_descent,
                gossip_rounds=args.gossip_rounds,
                gossip_reinit=False if args.no_gossip_reinit else None,
                inner_steps=args.inner_steps,
                eval_every=args.eval_every,
                threads=args.threads,
                scheduling=args.scheduling,
            )
            print(f"\n✓ {args.mode} run finished: J0={summary['J0']}, Jd={summary['Jd']}, DOPR={summary['dopr']}")
            for name, path in paths.items():
                print(f"  {name}: {path}")

        elif args.command == "compare":
            modes = [m.strip() for m in args.modes.split(",")] if args.modes else None
            summary, csv_path = compare(args.manifest, modes)
            print(f"\n✓ Compared {summary['entries']} graphs")
            print(json.dumps(summary, indent=2))
            print(f"  Output: {csv_path}")

        elif args.command == "evaluate":
            _print_stats(evaluate(args.graph, args.cost))

    except KeyboardInterrupt:
        print("\n\nInterrupted by user")
        sys.exit(130)
    except ConnectivityFailure as e:
        logging.error(f"Generation failed: {e}", exc_info=True)
        print(f"\n✗ Error: {e}")
        sys.exit(2)
    except (SpecweaveError, ValueError, FileNotFoundError) as e:
        logging.error(f"Invalid input: {e}", exc_info=True)
        print(f"\n✗ Error: {e}")
        sys.exit(1)
    except OSError as e:
        logging.error(f"I/O failure: {e}", exc_info=True)
        print(f"\n✗ Error: {e}")
        sys.exit(2)
    except Exception as e:
        logging.error(f"Fatal error: {e}", exc_info=True)
        print(f"\n✗ Error: {e}")
        sys.exit(1)


if __name__ == "__main__":
    main()
