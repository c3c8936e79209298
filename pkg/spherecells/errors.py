"""
	Exceptions raised by the spherecells package. All of them derive from `CellCertError`, itself a
	`ValueError`, so callers which only care about bad input can catch a single type.
"""


class CellCertError(ValueError):
	pass


class InvalidArgumentError(CellCertError):
	""" A parameter is outside the range an operation accepts. """


class DegenerateInputError(CellCertError):
	""" The input lies on a measure-zero set the operation cannot resolve (a point on a hyperplane, a zero vector). """


class InconsistentInputError(CellCertError):
	""" The anchor point does not satisfy the sign constraints it is supposed to satisfy. """


class DomainError(CellCertError):
	pass


class OverflowDomainError(DomainError):
	""" A tail probability underflows double precision, so the requested quantity cannot be evaluated. """


class CorruptInputError(CellCertError):
	""" An encoded vector or a binary file does not describe a valid object. """


class ConfigurationError(CellCertError):
	""" An experiment configuration does not match the schema. `location` holds the offending field or line. """

	def __init__(self, message: str, location: str = ""):
		super().__init__(message)
		self.location = location
