import argparse
import math

import pytest

from spherecells import widgets


@pytest.mark.parametrize(
	"value,expected",
	[
		("1024,2048", [1024, 2048]),
		("2^10, 2^12", [1024, 4096]),
		("", []),
		(" 7 ", [7]),
		([3, "4"], [3, 4])
	]
)
def test_parse_integer_list(value, expected):
	assert widgets.parse_integer_list(value) == expected


@pytest.mark.parametrize(
	"value,expected",
	[
		("0.5,1", [0.5, 1.0]),
		("pi", [math.pi]),
		("pi/4", [math.pi / 4]),
		("-pi/2", [-math.pi / 2]),
		("3pi/4", [3 * math.pi / 4]),
		("2*pi", [2 * math.pi]),
		("0,pi/2", [0.0, math.pi / 2])
	]
)
def test_parse_float_list(value, expected):
	assert widgets.parse_float_list(value) == pytest.approx(expected)


def test_list_type_reports_a_usage_error():
	parse = widgets.list_type(widgets.parse_integer_list)
	assert parse("1,2") == [1, 2]
	with pytest.raises(argparse.ArgumentTypeError):
		parse("1,two")
