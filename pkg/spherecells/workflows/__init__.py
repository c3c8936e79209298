from .workflow_experiment import combine_results, run, run_config, run_experiment, run_named
from .workflow_main import configure_logging, main
