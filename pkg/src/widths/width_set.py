"""Sets of neighborhood widths B(varsigma; c) and the disjoint neighborhood criterion."""
import math
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator

from src.config import settings
from src.utils.errors import ParameterError, RangeError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

HALF_SQRT2 = math.sqrt(2.0) / 2.0


class WidthSet(BaseModel):
    """
    The widths beta_k with sin(beta_k) = c varsigma^{k+1}, k = 0, 1, ...

    Terms are produced on demand from (varsigma, c) in log domain. A set with
    c varsigma < sqrt(2)/2 is admissible (every beta_k lies in (0, pi/4)); other sets
    with c varsigma < 1 are still representable so the criterion can reject them.
    """

    model_config = {"frozen": True}

    varsigma: float = Field(..., gt=0.0, lt=1.0, description="Ratio of consecutive sines")
    c: float = Field(default=1.0, gt=0.0, description="Scale of the sines")

    @model_validator(mode="after")
    def _check_first_term(self) -> "WidthSet":
        if self.c * self.varsigma >= 1.0:
            raise ValueError(f"c * varsigma = {self.c * self.varsigma:g} must be below 1")
        return self

    @classmethod
    def natural(cls, varsigma: float) -> "WidthSet":
        """B(varsigma)."""
        return cls(varsigma=varsigma, c=1.0)

    @property
    def admissible(self) -> bool:
        """True when every beta_k lies in (0, pi/4)."""
        return self.c * self.varsigma < HALF_SQRT2

    @property
    def is_natural(self) -> bool:
        return self.c == 1.0

    def check_index(self, k: int) -> None:
        if not 0 <= k < settings.width_cap:
            raise RangeError(k, settings.width_cap)

    def log_sine(self, k: int) -> float:
        """ln sin(beta_k) = ln c + (k+1) ln varsigma."""
        self.check_index(k)
        return math.log(self.c) + (k + 1) * math.log(self.varsigma)

    def log_sine_ratio(self, i: int, k: int) -> float:
        """ln(sin(beta_i) / sin(beta_k)) = (i - k) ln varsigma, with the exponent formed first."""
        self.check_index(i)
        self.check_index(k)
        return (i - k) * math.log(self.varsigma)

    def sine(self, k: int) -> float:
        return math.exp(self.log_sine(k))

    def angle(self, k: int) -> float:
        return math.asin(self.sine(k))

    def sines(self, count: int) -> np.ndarray:
        """sin(beta_0), ..., sin(beta_{count-1})."""
        if count > 0:
            self.check_index(count - 1)
        return np.exp(math.log(self.c) + np.arange(1, count + 1) * math.log(self.varsigma))

    def angles(self, count: int) -> np.ndarray:
        return np.arcsin(self.sines(count))


def dnp_terms(b: WidthSet, a: WidthSet, count: int) -> np.ndarray:
    """
    The ratios sin(beta_k) / sin(alpha_{k-1}) for k < count, with sin(alpha_{-1}) = 1.

    Each ratio is formed in log domain, so the k = 0 term is sin(beta_0).
    """
    if count < 1:
        raise ParameterError("count", count, "count >= 1")
    b.check_index(count - 1)
    logs = [b.log_sine(0)]
    logs += [b.log_sine(k) - a.log_sine(k - 1) for k in range(1, count)]
    return np.exp(np.array(logs))


def dnp_check(b: WidthSet, a: WidthSet, count: Optional[int] = None) -> bool:
    """
    Whether (B, A) has the disjoint neighborhood property on the first count terms.

    The property holds for dimension k exactly when sin(beta_k) / sin(alpha_{k-1}) is at
    most sqrt(2)/2. Both sets must be admissible; an inadmissible B never qualifies.
    """
    count = settings.width_cap if count is None else count
    if not (b.admissible and a.admissible):
        logger.debug("dnp rejected inadmissible widths", b=b.model_dump(), a=a.model_dump())
        return False
    return bool(np.all(dnp_terms(b, a, count) <= HALF_SQRT2))


def is_natural(b: WidthSet) -> bool:
    """B is natural iff sin(beta_i) = sin(beta_0)^{i+1}, i.e. c = 1."""
    return b.is_natural


def link_sines(b: WidthSet, k: int, count: int) -> np.ndarray:
    """
    sin(beta''_j) = sin(beta_{k+j+1}) / sin(beta_k) for j < count.

    The widths induced on the rescaled link of a k-simplex.

    Raises:
        RangeError: If beta_{k+count} lies past the cap
    """
    b.check_index(k + count)
    return np.exp(np.array([b.log_sine_ratio(k + j + 1, k) for j in range(count)]))


def induced_link_widths(b: WidthSet, k: int, count: int = 2) -> WidthSet:
    """
    The width set induced on links of k-simplices.

    Consecutive link sines have ratio varsigma and first term varsigma, whatever c is,
    so the induced set is B(varsigma). It equals b exactly when b is natural.

    Raises:
        RangeError: If the link terms needed lie past the cap
    """
    b.check_index(k + count)
    return WidthSet.natural(b.varsigma)


def width_table(b: WidthSet, count: int) -> List[dict]:
    """Plot-ready rows (k, sin beta_k, beta_k)."""
    return [
        {"k": k, "sine": float(s), "angle": float(a)}
        for k, (s, a) in enumerate(zip(b.sines(count), b.angles(count)))
    ]
