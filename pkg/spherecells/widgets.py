import argparse
import math
import re
from typing import Any, Callable, List, Union

# Angles such as 'pi', '-pi/2' or '3pi/4'.
PI_REGEX = re.compile(r"^(?P<factor>[+-]?[\d.]*)\*?pi(/(?P<denominator>[\d.]+))?$")


def _split(value: Union[str, List[Any]]) -> List[str]:
	if isinstance(value, str):
		return [item.strip() for item in value.split(',') if item.strip()]
	return [str(item) for item in value]


def _parse_integer(item: str) -> int:
	if '^' in item:
		base, exponent = item.split('^', 1)
		return int(base) ** int(exponent)
	return int(item)


def _parse_float(item: str) -> float:
	match = PI_REGEX.match(item.strip().lower())
	if match is None:
		return float(item)
	factor = match.group('factor')
	if factor in ('', '+'):
		factor = 1.0
	elif factor == '-':
		factor = -1.0
	denominator = match.group('denominator')
	return float(factor) * math.pi / (float(denominator) if denominator else 1.0)


def parse_integer_list(value: Union[str, List[Any]]) -> List[int]:
	""" '1024,2048' -> [1024, 2048]. Powers may be written as 2^10. """
	return [_parse_integer(item) for item in _split(value)]


def parse_float_list(value: Union[str, List[Any]]) -> List[float]:
	""" Also accepts multiples of pi, so angles can be given as 'pi/4'. """
	return [_parse_float(item) for item in _split(value)]


def list_type(parser: Callable[[str], List[Any]]) -> Callable[[str], List[Any]]:
	""" Wraps a list parser so argparse reports a clean usage error. """

	def parse(value: str) -> List[Any]:
		try:
			return parser(value)
		except ValueError:
			message = f"invalid list: '{value}'"
			raise argparse.ArgumentTypeError(message)

	parse.__name__ = parser.__name__
	return parse
