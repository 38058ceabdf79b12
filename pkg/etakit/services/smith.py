from typing import List, Sequence
import logging

import numpy as np
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

logger = logging.getLogger(__name__)


class SmithService:
    def invariant_factors(self, rows: Sequence[Sequence[int]], columns: int) -> List[int]:
        """Invariant factors of Z^columns / rowspan.

        Torsion factors (> 1) come first, then one 0 per free summand. An empty
        list means the quotient is trivial.
        """
        if columns == 0:
            return []
        if not rows:
            return [0] * columns

        # sympy's SNF wants a square matrix; pad with zero rows or columns
        size = max(len(rows), columns)
        padded = np.zeros((size, size), dtype=np.int64)
        padded[:len(rows), :columns] = np.asarray(rows, dtype=np.int64)
        snf = smith_normal_form(Matrix(padded.tolist()), domain=ZZ)

        diagonal = np.abs(np.array([int(snf[i, i]) for i in range(size)], dtype=np.int64))
        nonzero = diagonal[diagonal != 0]
        torsion = sorted(int(d) for d in nonzero if d > 1)
        free_rank = columns - len(nonzero)
        logger.debug(f"smith normal form diagonal={diagonal.tolist()} free_rank={free_rank}")
        return torsion + [0] * free_rank


smith_service = SmithService()
