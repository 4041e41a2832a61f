"""
Command-line surface of the spline engine: python manage.py splines <subcommand> ...
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from utils import rendering
from utils.cycle import METHODS, compare_methods, cycle_flowup
from utils.exceptions import DomainError, InputError, SplineError
from utils.flowup import (
    FlowUpBuilder,
    decompose,
    determinant_criterion,
    is_flowup_basis,
)
from utils.graph import LabeledGraph, is_spline, load_graph, load_spline, load_splines
from utils.oracle import SplineOracle, check_min_leading, check_spline_count, selftest, trails_equivalence
from utils.ring import print_elem
from utils.trails import TrailEnumerator

# Configure logging
logger = logging.getLogger(__name__)

EXIT_DOMAIN_ERROR = 1
EXIT_INPUT_ERROR = 2

ORACLE_CHECKS = ('min-leading', 'spline-count', 'trails-equivalence')


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise CommandError(f"Cannot read {path}: {e.strerror or e}", returncode=EXIT_INPUT_ERROR)


class Command(BaseCommand):
    help = 'Compute generalized spline modules on edge-labeled graphs'
    requires_system_checks = []

    def add_arguments(self, parser):
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument('--format', choices=['human', 'json'], default=getattr(settings, 'SPLINES_FORMAT', 'human'))
        common.add_argument('--jobs', type=int, default=getattr(settings, 'SPLINES_JOBS', 1))
        common.add_argument('--path-limit', type=int, default=getattr(settings, 'SPLINES_PATH_LIMIT', None))
        common.add_argument('--seed', type=int, default=getattr(settings, 'SPLINES_SEED', 0))

        subcommands = parser.add_subparsers(dest='subcommand', required=True)

        def add(name, help):
            return subcommands.add_parser(
                name, parents=[common], help=help,
                called_from_command_line=getattr(parser, 'called_from_command_line', None),
            )

        check = add('check', 'Check whether a vector is a spline')
        check.add_argument('graph')
        check.add_argument('spline')

        trails = add('trails', 'List constraint paths from a vertex')
        trails.add_argument('graph')
        trails.add_argument('--vertex', type=int, required=True)
        trails.add_argument('--flow-index', type=int)

        flowup = add('flowup', 'Build one flow-up class')
        flowup.add_argument('graph')
        flowup.add_argument('--index', type=int, required=True)

        basis = add('basis', 'Build the flow-up basis')
        basis.add_argument('graph')

        check_basis = add('check-basis', 'Check a candidate flow-up basis')
        check_basis.add_argument('graph')
        check_basis.add_argument('splines')
        check_basis.add_argument('--determinant', action='store_true', help='Also apply the determinant criterion')

        decompose_parser = add('decompose', 'Coordinates of a spline in the flow-up basis')
        decompose_parser.add_argument('graph')
        decompose_parser.add_argument('spline')

        cycle = add('cycle', 'Flow-up class on a cycle')
        cycle.add_argument('graph')
        cycle.add_argument('--index', type=int, required=True)
        cycle.add_argument('--method', choices=METHODS, default='general')
        cycle.add_argument('--compare', action='store_true')

        oracle = add('oracle', 'Compare against exhaustive search')
        oracle.add_argument('graph')
        oracle.add_argument('--check', choices=ORACLE_CHECKS, default='min-leading')

        qelem = add('qelem', 'Product of the smallest leading entries')
        qelem.add_argument('graph')

        self_test = add('selftest', 'Randomized agreement run')
        self_test.add_argument('--count', type=int, default=getattr(settings, 'SPLINES_SELFTEST_GRAPHS', 200))
        self_test.add_argument('--max-vertices', type=int, default=5)
        self_test.add_argument('--max-label', type=int, default=12)

    def handle(self, *args, **options):
        subcommand = options['subcommand']
        handler = getattr(self, f"handle_{subcommand.replace('-', '_')}")
        try:
            handler(options)
        except DomainError as e:
            logger.error(f"splines {subcommand} failed: {e}")
            raise CommandError(str(e), returncode=EXIT_DOMAIN_ERROR)
        except (InputError, SplineError) as e:
            logger.error(f"splines {subcommand} rejected its input: {e}")
            raise CommandError(str(e), returncode=EXIT_INPUT_ERROR)

    def emit(self, options, document, human: str):
        if options['format'] == 'json':
            self.stdout.write(rendering.to_json(document), ending='')
        else:
            self.stdout.write(human)

    def load(self, options) -> LabeledGraph:
        return load_graph(_read(options['graph']))

    def handle_check(self, options):
        graph = self.load(options)
        result = is_spline(graph, load_spline(_read(options['spline']), graph.ring))
        self.emit(options, rendering.check_dict(result), rendering.check_human(result))

    def handle_trails(self, options):
        graph = self.load(options)
        paths = TrailEnumerator(options['path_limit']).constraint_paths(graph, options['vertex'])
        self.emit(
            options,
            rendering.trails_dict(options['vertex'], paths),
            rendering.trails_human(options['vertex'], paths, options['flow_index']),
        )

    def handle_flowup(self, options):
        graph = self.load(options)
        flowup = FlowUpBuilder(graph, options['path_limit']).build_flowup(options['index'])
        self.emit(options, rendering.flowup_dict(flowup), rendering.flowup_human(flowup))

    def handle_basis(self, options):
        graph = self.load(options)
        basis = FlowUpBuilder(graph, options['path_limit']).build_basis(options['jobs'])
        self.emit(options, rendering.basis_dict(basis), rendering.basis_human(basis))

    def handle_check_basis(self, options):
        graph = self.load(options)
        candidate = load_splines(_read(options['splines']), graph.ring)
        report = is_flowup_basis(graph, candidate, options['path_limit'])
        determinant = determinant_criterion(graph, candidate, options['path_limit']) if options['determinant'] else None
        self.emit(
            options,
            rendering.basis_report_dict(report, determinant),
            rendering.basis_report_human(report, determinant),
        )

    def handle_decompose(self, options):
        graph = self.load(options)
        spline = load_spline(_read(options['spline']), graph.ring)
        basis = FlowUpBuilder(graph, options['path_limit']).build_basis(options['jobs'])
        coefficients = decompose(graph, basis, spline)
        self.emit(options, rendering.coefficients_dict(coefficients), rendering.coefficients_human(coefficients))

    def handle_cycle(self, options):
        graph = self.load(options)
        if options['compare']:
            comparison = compare_methods(graph, options['index'])
            self.emit(options, rendering.comparison_dict(comparison), rendering.comparison_human(comparison))
            return
        flowup = cycle_flowup(graph, options['index'], options['method'])
        self.emit(options, rendering.flowup_dict(flowup), rendering.flowup_human(flowup))

    def handle_oracle(self, options):
        graph = self.load(options)
        oracle = SplineOracle()
        if options['check'] == 'min-leading':
            reports = check_min_leading(graph, oracle)
        elif options['check'] == 'spline-count':
            reports = [check_spline_count(graph, oracle)]
        else:
            reports = trails_equivalence(graph, oracle)
        self.emit(options, rendering.reports_dict(reports), rendering.reports_human(reports))

    def handle_qelem(self, options):
        graph = self.load(options)
        q_g = FlowUpBuilder(graph, options['path_limit']).q_element()
        self.emit(options, {'q': print_elem(q_g)}, f"Q_G = {print_elem(q_g)}")

    def handle_selftest(self, options):
        reports = selftest(options['seed'], options['count'], options['max_vertices'], options['max_label'])
        self.emit(options, rendering.reports_dict(reports), rendering.reports_human(reports))
        if not all(r.agree for r in reports):
            raise CommandError("Self-test found disagreements", returncode=EXIT_DOMAIN_ERROR)


def run(argv: Sequence[str], stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """
    Run the splines command in-process.

    Args:
        argv: Arguments after "splines", e.g. ["flowup", "c4.json", "--index", "2"].
        stdout: Stream for results; defaults to sys.stdout.
        stderr: Stream for error messages; defaults to sys.stderr.

    Returns:
        0 on success, 1 for domain errors, 2 for input and usage errors.
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    command = Command(stdout=stdout, stderr=stderr)
    parser = command.create_parser('manage.py', 'splines')
    try:
        options = vars(parser.parse_args(list(argv)))
    except CommandError as e:
        stderr.write(f"{e}\n")
        return EXIT_INPUT_ERROR

    try:
        command.execute(**options)
    except CommandError as e:
        stderr.write(f"Error: {e}\n")
        return e.returncode
    return 0
