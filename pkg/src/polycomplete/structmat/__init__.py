from .eigenstructure import (
    Eigenstructure,
    eigenstructure,
    infinite_multiplicities,
    minimal_indices,
)
from .matrix import PolyMatrix, stack
from .smith import (
    determinant,
    determinantal_divisors,
    invariant_factors_from_divisors,
    rank,
    smith_form,
)
