"""
Command-line entry point for NK-landscape experiments.

Verbs:
  gen-instance  generate a seeded instance file
  run           run an experiment spec and write records and result tables
  table         rebuild the result table from a results directory
  oracle        brute-force the global optimum of a small instance

Exit codes: 0 success, 1 other error, 2 spec error, 3 some trials failed.
"""
import argparse
import os
import sys

# Add root directory to path so the packages import without installation
root_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, root_dir)

from analysis.result_analyzer import COMPARE_ALL_PAIRS, COMPARE_REFERENCE, ResultAnalyzer
from analysis.table_writer import emit_table
from experiments.experiment_runner import ExperimentRunner
from experiments.experiment_spec import SpecError, load_spec
from experiments.settings import Settings
from landscape.instance_store import InstanceFormatError, read_instance, write_instance
from landscape.nk_instance import BRUTE_FORCE_LIMIT, generate_instance, genome_to_string

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_SPEC_ERROR = 2
EXIT_PARTIAL_FAILURE = 3


def gen_instance(args):
    instance = generate_instance(args.n, args.k, args.seed)
    write_instance(instance, args.out)
    print(f"Instance n={args.n} k={args.k} seed={args.seed} saved to {args.out}")
    return EXIT_OK


def run(args):
    spec = load_spec(args.spec)
    if args.out_dir:
        spec.output_dir = args.out_dir
    settings = Settings.from_env()
    if args.workers:
        settings.workers = args.workers
        settings.reproducible = False
    runner = ExperimentRunner(spec, settings)
    runner.run_experiment()
    if runner.failures:
        print(f"{len(runner.failures)} trial(s) failed, see {runner.output_dir}")
        return EXIT_PARTIAL_FAILURE
    print("\nExperiment completed successfully!")
    return EXIT_OK


def table(args):
    analyzer = ResultAnalyzer(args.results_dir)
    if analyzer.df.empty:
        print(f"No run records found in {args.results_dir}")
        return EXIT_ERROR
    result = analyzer.build_table(reference=args.reference, comparison=args.comparison)
    print(emit_table(result, args.results_dir))
    return EXIT_PARTIAL_FAILURE if analyzer.failures else EXIT_OK


def oracle(args):
    if args.instance:
        instance = read_instance(args.instance)
    else:
        instance = generate_instance(args.n, args.k, args.seed)
    if instance.n > BRUTE_FORCE_LIMIT:
        print(f"Brute force is limited to n <= {BRUTE_FORCE_LIMIT}; instance has n={instance.n}")
        return EXIT_ERROR
    genome, fitness = instance.brute_force_optimum()
    print(f"Global optimum of {instance}: fitness={fitness:.10f}")
    print(f"Genome: {genome_to_string(genome)}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(description='VAE memetic algorithm experiments on NK landscapes')
    verbs = parser.add_subparsers(dest='verb', required=True)

    p = verbs.add_parser('gen-instance', help='Generate a seeded NK instance file')
    p.add_argument('--n', type=int, required=True, help='Problem size')
    p.add_argument('--k', type=int, required=True, help='Epistasis degree')
    p.add_argument('--seed', type=int, required=True, help='Instance seed')
    p.add_argument('--out', type=str, required=True, help='Output instance file (.npz)')
    p.set_defaults(handler=gen_instance)

    p = verbs.add_parser('run', help='Run an experiment spec file')
    p.add_argument('spec', type=str, help='Experiment spec file (JSON)')
    p.add_argument('--out-dir', type=str, default=None,
                   help='Directory for records and tables (overrides the spec and NKVAE_OUTPUT_DIR)')
    p.add_argument('--workers', type=int, default=None,
                   help='Run trials in parallel worker processes')
    p.set_defaults(handler=run)

    p = verbs.add_parser('table', help='Rebuild the result table from a results directory')
    p.add_argument('results_dir', type=str, help='Experiment output directory')
    p.add_argument('--reference', type=str, default=None, help='Reference algorithm for Diff columns')
    p.add_argument('--comparison', choices=[COMPARE_REFERENCE, COMPARE_ALL_PAIRS], default=COMPARE_REFERENCE,
                   help='Holm family: reference vs. rest, or all pairs')
    p.set_defaults(handler=table)

    p = verbs.add_parser('oracle', help='Brute-force the optimum of a small instance')
    p.add_argument('--instance', type=str, default=None, help='Instance file (.npz)')
    p.add_argument('--n', type=int, default=None, help='Problem size (without --instance)')
    p.add_argument('--k', type=int, default=None, help='Epistasis degree (without --instance)')
    p.add_argument('--seed', type=int, default=None, help='Instance seed (without --instance)')
    p.set_defaults(handler=oracle)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.verb == 'oracle' and not args.instance and None in (args.n, args.k, args.seed):
        print("oracle needs --instance or all of --n, --k, --seed")
        return EXIT_ERROR
    try:
        return args.handler(args)
    except SpecError as e:
        print(f"Error in experiment spec: {e}")
        return EXIT_SPEC_ERROR
    except InstanceFormatError as e:
        print(f"Error reading instance: {e}")
        return EXIT_ERROR
    except Exception as e:
        print(f"Error running {args.verb}: {e}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
