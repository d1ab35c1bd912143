"""Command line entry point.

Verbs::

    manetids run --mode ids --node-count 60 --trace run.trace --results run.tsv
    manetids campaign --node-counts 20,40,60,80,100 --seeds 1,2,3 --workers 4
    manetids recount run.trace run.tsv

Every :class:`~manetids.scenario.Scenario` field has a flag; flags override
the values of ``--config``.

Exit status is 0 on success, 1 for configuration errors and 2 when a run
breaks an invariant or a recount disagrees with its results record.
"""
import argparse
from dataclasses import fields
import logging
from logging import error
import sys

from manetids.campaign import CampaignError, run_campaign, run_scenario
from manetids.datasets import TraceDataset, read_results_record
from manetids.engine.simulator import to_ticks
from manetids.explainers import MetricJSONExplainer, MetricTextExplainer
from manetids.metrics import NetworkMetric
from manetids.metrics.utils import recount_ledger, summarize
from manetids.network import SimulationInvariantError
from manetids.scenario import Mode, Scenario, ScenarioError

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2

EXPLAINERS = {'text': MetricTextExplainer, 'json': MetricJSONExplainer}


def _flag(name):
    return '--' + name.replace('_', '-')


def add_scenario_arguments(parser):
    """One ``--flag`` per scenario field plus ``--config``."""
    parser.add_argument('--config', metavar='PATH',
                        help="key = value scenario file")
    group = parser.add_argument_group('scenario')
    defaults = Scenario()
    for f in fields(Scenario):
        default = getattr(defaults, f.name)
        if isinstance(default, Mode):
            default = default.value
        group.add_argument(_flag(f.name), dest=f.name, default=None,
                           metavar=f.type.__name__.upper(),
                           help="default: {}".format(default))


def scenario_from_args(args):
    """Scenario from ``--config`` and field flags.

    Raises:
        ScenarioError: Unreadable file, unparsable or invalid values.
    """
    base = None
    if args.config is not None:
        try:
            base = Scenario.load(args.config)
        except OSError as e:
            raise ScenarioError('config', str(e)) from e
    overrides = {f.name: getattr(args, f.name) for f in fields(Scenario)
                 if getattr(args, f.name) is not None}
    return Scenario.from_dict(overrides, base=base).validate()


def _parse_list(name, text, convert):
    try:
        values = [convert(item.strip()) for item in text.split(',')
                  if item.strip()]
    except ValueError:
        raise ScenarioError(name, "cannot parse {!r}".format(text)) from None
    if not values:
        raise ScenarioError(name, "must not be empty")
    return values


def _print_summary(summary, out):
    for metric, value in summary.items():
        out.write('{}\t{}\n'.format(metric, 'NA' if value is None else value))


def _print_explanations(ledger, style, out):
    """One line per metric, prose or JSON."""
    explainer = EXPLAINERS[style](NetworkMetric(ledger))
    for explain in (explainer.pdr, explainer.avg_delay, explainer.nrl,
                    explainer.routing_packets, explainer.throughput,
                    explainer.drop_pct, explainer.packets_received):
        out.write(explain() + '\n')


def cmd_run(args, out):
    scenario = scenario_from_args(args)
    result, summary = run_scenario(scenario, trace_path=args.trace,
                                   record_path=args.results)
    _print_summary(summary, out)
    if args.explain is not None:
        _print_explanations(result.ledger, args.explain, out)
    return EXIT_OK


def cmd_campaign(args, out):
    template = scenario_from_args(args)
    node_counts = _parse_list('node_counts', args.node_counts, int)
    modes = _parse_list('modes', args.modes, lambda m: Mode(m.lower()))
    seeds = _parse_list('seeds', args.seeds, int)
    if args.workers < 1:
        raise ScenarioError('workers', "must be at least 1")
    results = run_campaign(template, node_counts, modes, seeds,
                           workers=args.workers, output_dir=args.output_dir)
    metrics = [m for m in ('pdr', 'avg_delay_ms', 'nrl', 'throughput',
                           'drop_pct', 'packets_received')
               if m in results.metric_names]
    out.write(results.table(metrics).xs('mean', axis=1, level=1)
              .to_string() + '\n')
    return EXIT_OK


def recount_mismatches(trace_path, record_path):
    """Metrics of a results record that a recount of its trace does not
    reproduce.

    Returns:
        dict: Metric name to ``(recorded, recounted)``; empty on agreement.
    """
    header, recorded = read_results_record(record_path)
    scenario = header['scenario']
    ledger = recount_ledger(TraceDataset.from_file(trace_path),
                            report_interval=scenario.report_interval,
                            payload_size=scenario.payload_size,
                            elapsed=to_ticks(scenario.duration))
    mismatches = {}
    for metric, value in summarize(ledger).items():
        if metric not in recorded:
            continue
        expected = recorded[metric]
        actual = None if value is None else float(value)
        if expected != actual:
            mismatches[metric] = (expected, actual)
    return mismatches


def cmd_recount(args, out):
    mismatches = recount_mismatches(args.trace, args.results)
    if mismatches:
        for metric, (expected, actual) in sorted(mismatches.items()):
            error("%s: record %s, trace %s", metric, expected, actual)
        out.write('recount mismatch in {} metric(s)\n'.format(len(mismatches)))
        return EXIT_RUNTIME
    out.write('recount matches\n')
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog='manetids',
        description="MANET black hole attack and IDS simulator")
    parser.add_argument('--verbose', '-v', action='store_true',
                        help="log progress")
    parser.add_argument('--debug', action='store_true',
                        help="log protocol events")
    verbs = parser.add_subparsers(dest='verb', metavar='VERB')
    verbs.required = True

    run = verbs.add_parser('run', help="one scenario")
    add_scenario_arguments(run)
    run.add_argument('--trace', default='run.trace', metavar='PATH')
    run.add_argument('--results', default='run.tsv', metavar='PATH')
    run.add_argument('--explain', choices=sorted(EXPLAINERS),
                     help="also describe each metric in prose or JSON")
    run.set_defaults(handler=cmd_run)

    campaign = verbs.add_parser('campaign',
                                help="density x mode x seed sweep")
    add_scenario_arguments(campaign)
    campaign.add_argument('--node-counts', default='20,40,60,80,100')
    campaign.add_argument('--modes', default='normal,attack,ids')
    campaign.add_argument('--seeds', default='1')
    campaign.add_argument('--workers', type=int, default=1)
    campaign.add_argument('--output-dir', default='campaign', metavar='DIR')
    campaign.set_defaults(handler=cmd_campaign)

    recount = verbs.add_parser('recount',
                               help="recompute metrics from a trace")
    recount.add_argument('trace')
    recount.add_argument('results')
    recount.set_defaults(handler=cmd_recount)
    return parser


def main(argv=None, out=None):
    args = build_parser().parse_args(argv)
    level = logging.WARNING
    if args.debug:
        level = logging.DEBUG
    elif args.verbose:
        level = logging.INFO
    logging.basicConfig(level=level,
                        format='%(levelname)s %(name)s: %(message)s')
    out = out if out is not None else sys.stdout
    try:
        return args.handler(args, out)
    except ScenarioError as e:
        error("configuration error: %s", e)
        return EXIT_CONFIG
    except (SimulationInvariantError, CampaignError) as e:
        error("%s", e)
        return EXIT_RUNTIME


if __name__ == '__main__':
    sys.exit(main())
