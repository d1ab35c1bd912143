from manetids.datasets.dataset import Dataset
from manetids.datasets.trace_dataset import TraceDataset
from manetids.datasets.results_dataset import (ResultsDataset, SERIES_FILES,
    read_results_record, write_results_record)
