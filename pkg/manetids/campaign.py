"""Single runs and density/mode/seed sweeps."""
from concurrent.futures import ProcessPoolExecutor
from logging import info
import os

from manetids.datasets import ResultsDataset, write_results_record
from manetids.metrics.utils import summarize
from manetids.network import Network
from manetids.scenario import Mode
from manetids.trace import TraceWriter


class CampaignError(RuntimeError):
    """A campaign cell failed.

    Attributes:
        cell (tuple): ``(node_count, mode, seed)`` of the failed run.
    """

    def __init__(self, node_count, mode, seed, cause):
        self.cell = (node_count, Mode(mode).value, seed)
        self.cause = cause
        super(CampaignError, self).__init__(
            "run node_count={} mode={} seed={} failed: {}: {}".format(
                node_count, Mode(mode).value, seed, type(cause).__name__,
                cause))

    def __reduce__(self):
        # crosses process boundaries in worker pools
        return (type(self), self.cell + (self.cause,))


def run_scenario(scenario, trace_path=None, record_path=None):
    """Execute one deterministic run.

    Args:
        scenario (Scenario): Configuration, validated here.
        trace_path (str, optional): Where to write the event trace.
        record_path (str, optional): Where to write the results record.

    Returns:
        tuple: ``(RunResult, summary)`` where `summary` maps every reported
        metric to its value (None when undefined).

    Raises:
        ScenarioError: Invalid configuration.
        SimulationInvariantError: Packet conservation failed.
    """
    scenario.validate()
    if trace_path is not None:
        with open(trace_path, 'w', newline='\n') as f:
            result = Network(scenario, trace=TraceWriter(f)).run()
    else:
        result = Network(scenario).run()

    summary = summarize(result.ledger)
    summary['detections'] = len(result.detections)
    summary['false_positives'] = len(set(result.blacklisted)
                                     - set(result.attackers))
    if record_path is not None:
        write_results_record(record_path, result, summary)
    info("node_count=%d mode=%s seed=%d: pdr=%.3f routing=%d",
         scenario.node_count, scenario.mode.value, scenario.seed,
         summary['pdr'], summary['routing_packets'])
    return result, summary


def cell_name(node_count, mode, seed):
    return 'n{}_{}_s{}'.format(node_count, Mode(mode).value, seed)

def _run_cell(args):
    scenario, directory = args
    paths = {}
    if directory is not None:
        stem = os.path.join(directory, cell_name(scenario.node_count,
                                                 scenario.mode, scenario.seed))
        paths = {'trace_path': stem + '.trace', 'record_path': stem + '.tsv'}
    try:
        _, summary = run_scenario(scenario, **paths)
    except Exception as e:
        raise CampaignError(scenario.node_count, scenario.mode, scenario.seed,
                            e) from e
    record = {'node_count': scenario.node_count,
              'mode': scenario.mode.value, 'seed': scenario.seed}
    record.update(summary)
    return record


def campaign_cells(template, node_counts, modes, seeds):
    """Validated scenarios of the cartesian product, in density, mode, seed
    order.

    Raises:
        ValueError: An empty list.
        ScenarioError: Any cell is invalid (before anything runs).
    """
    for name, values in (('node_counts', node_counts), ('modes', modes),
                         ('seeds', seeds)):
        if not values:
            raise ValueError("'{}' must not be empty".format(name))
    return [template.replace(node_count=n, mode=Mode(m), seed=seed).validate()
            for n in node_counts for m in modes for seed in seeds]


def run_campaign(template, node_counts, modes, seeds, workers=1,
                 output_dir=None):
    """Run every ``(node_count, mode, seed)`` combination.

    Cells are independent deterministic runs, so the results do not depend
    on `workers`.

    Args:
        template (Scenario): Values for every field not swept.
        node_counts (list(int)): Densities.
        modes (list(Mode)): Modes.
        seeds (list(int)): Seeds.
        workers (int): Processes; 1 runs in this process.
        output_dir (str, optional): Receives per-cell traces and records
            under ``cells/``, the runs table, the summary table and the
            series files.

    Returns:
        ResultsDataset: One row per cell.

    Raises:
        CampaignError: A cell failed; the remaining cells are abandoned.
    """
    cells = campaign_cells(template, node_counts, modes, seeds)
    cell_dir = None
    if output_dir is not None:
        cell_dir = os.path.join(output_dir, 'cells')
        os.makedirs(cell_dir, exist_ok=True)
    info("campaign of %d runs with %d worker(s)", len(cells), workers)

    jobs = [(cell, cell_dir) for cell in cells]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_cell, jobs))
    else:
        records = [_run_cell(job) for job in jobs]

    results = ResultsDataset.from_records(records, metadata={
        'template': template.to_dict(), 'node_counts': list(node_counts),
        'modes': [Mode(m).value for m in modes], 'seeds': list(seeds)})
    if output_dir is not None:
        results.export_dataset(os.path.join(output_dir, 'runs.tsv'))
        results.table().to_csv(os.path.join(output_dir, 'table.tsv'),
                               sep='\t', na_rep='NA')
        emit_plot_data(results, output_dir)
    return results


def emit_plot_data(results, directory):
    """One series file per figure (drop percentage, PDR, routing load,
    throughput, packets received): metric against node count, one column per
    mode."""
    return results.emit_plot_data(directory)
