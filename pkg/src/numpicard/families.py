"""Node-family tags shared by the polynomial, reference-set and solver code."""

import enum


class Family(str, enum.Enum):
    EQUIDISTANT = "equidistant"
    CHEBYSHEV1 = "chebyshev1"
    CHEBYSHEV2 = "chebyshev2"
    LEGENDRE_SHIFTED = "legendre-shifted"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, value):
        """Accept a Family or its string tag (case-insensitive, ``_`` or ``-``)."""
        if isinstance(value, cls):
            return value
        tag = str(value).strip().lower().replace("_", "-")
        for fam in cls:
            if fam.value == tag:
                return fam
        raise ValueError(f"unknown node family {value!r}")


# Reference interval [a, b] on which each family places its nodes.
INTERVALS = {
    Family.EQUIDISTANT: (0.0, 1.0),
    Family.CHEBYSHEV1: (-1.0, 1.0),
    Family.CHEBYSHEV2: (-1.0, 1.0),
    Family.LEGENDRE_SHIFTED: (0.0, 1.0),
}

# Families whose node sets contain both ends of the reference interval.
ENDPOINT_FAMILIES = frozenset({Family.EQUIDISTANT, Family.CHEBYSHEV2})

# Families given by roots of an orthogonal polynomial.
ORTHOGONAL_FAMILIES = frozenset({Family.CHEBYSHEV1, Family.LEGENDRE_SHIFTED})
