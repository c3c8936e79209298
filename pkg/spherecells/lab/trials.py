"""
	Runs independent Monte Carlo trials, serially or on a process pool.

	A trial is a module-level function `function(trial_id, *arguments)` that builds everything it needs
	from its own stream, so results do not depend on the order in which workers finish. Results always
	come back sorted by trial id.
"""
import multiprocessing
import os
from typing import Any, Callable, List, Optional, Sequence, Tuple

from loguru import logger
from tqdm import tqdm

THREADS_VARIABLE = "CELLCERT_THREADS"

TrialFunction = Callable[..., Any]


def resolve_threads(threads: Optional[int] = None) -> int:
	"""
		Pool size: an explicit value wins, then the CELLCERT_THREADS environment variable, then the number
		of available cores.
	"""
	if threads is not None:
		return max(1, int(threads))
	variable = os.environ.get(THREADS_VARIABLE)
	if variable:
		try:
			return max(1, int(variable))
		except ValueError:
			logger.warning(f"Ignoring {THREADS_VARIABLE}={variable!r}: not an integer.")
	return os.cpu_count() or 1


# Keep this as a separate function. Class methods are finicky when used with multiprocessing.
def run_trial(function: TrialFunction, trial_id: int, arguments: Tuple) -> Tuple[int, Any]:
	return trial_id, function(trial_id, *arguments)


class TrialRunner:
	def __init__(self, threads: Optional[int] = 1):
		self.threads = resolve_threads(threads)
		# The value to activate the progress bar at.
		self.progress_bar_minimum_trials = 50

	def run_serial(self, function: TrialFunction, trial_ids: Sequence[int], arguments: Tuple) -> List[Tuple[int, Any]]:
		use_progressbar = len(trial_ids) >= self.progress_bar_minimum_trials
		progress_bar = tqdm(total = len(trial_ids)) if use_progressbar else None
		results = list()
		for trial_id in trial_ids:
			results.append(run_trial(function, trial_id, arguments))
			if progress_bar is not None:
				progress_bar.update(1)
		if progress_bar is not None:
			progress_bar.close()
		return results

	def run_threaded(self, function: TrialFunction, trial_ids: Sequence[int], arguments: Tuple) -> List[Tuple[int, Any]]:
		results = list()
		with multiprocessing.Pool(processes = self.threads) as pool:
			pending = [pool.apply_async(run_trial, args = (function, trial_id, arguments)) for trial_id in trial_ids]
			for item in tqdm(pending, disable = len(trial_ids) < self.progress_bar_minimum_trials):
				results.append(item.get())
		return results

	def run(self, function: TrialFunction, trials: int, arguments: Tuple = ()) -> List[Any]:
		"""
			Runs `function(trial_id, *arguments)` for trial ids 0 .. trials - 1.
		Returns
		-------
		list
			The trial results ordered by trial id.
		"""
		trial_ids = list(range(trials))
		logger.debug(f"Running {trials} trials of {getattr(function, '__name__', function)} with {self.threads} processes.")
		if self.threads > 1 and trials > 1:  # One process is slower than using the serial method.
			results = self.run_threaded(function, trial_ids, arguments)
		else:
			results = self.run_serial(function, trial_ids, arguments)
		return [value for _, value in sorted(results, key = lambda item: item[0])]
