"""Exception types shared across the package."""


class DimensionMismatchError(ValueError):
    """Operands live in ambient spaces of different dimension."""


class ZeroPolynomialError(ValueError):
    """An operation that needs a nonzero polynomial received the zero polynomial."""


class NonHomogeneousError(ValueError):
    """A homogeneous form was required but the terms have mixed total degree."""


class InvalidModelError(ValueError):
    """Resolution data violates a structural invariant (bad multiplicity, duplicate ids, ...)."""


class UnsupportedModelError(Exception):
    """A membership query needs monomial order weights that a real divisor does not carry.

    Models whose real divisors lack weight vectors can still answer rlct/lct
    queries, but monomial membership is undefined for them.
    """


class SchemaError(ValueError):
    """A JSON document does not match the expected schema.

    The message always names the offending path and field.
    """
