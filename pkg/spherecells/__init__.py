from . import errors
from .commandline_parser import __VERSION__
