from .binary import (
	encoded_from_bytes, encoded_to_bytes, frame_from_bytes, frame_to_bytes, read_bytes, signs_from_bytes,
	signs_to_bytes, write_bytes
)
from .configuration import EXPERIMENTS, ExperimentConfig, load_config, load_settings, parse_config, read_json
from .projectdata import DataWorkflowBasic, read_table, save_summary, save_table
from .projectpaths import OutputFilenames, check_folder
