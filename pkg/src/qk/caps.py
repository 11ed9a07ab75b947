"""Size caps that keep brute-force enumerations at desk scale."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ResourceError

# hard ceiling on the number of presheaves a single enumeration may produce
MAX_PRESHEAVES = 20000


@dataclass(frozen=True)
class Caps:
    """Input caps for suites that build iterated presheaf categories."""

    max_hom: int = 4
    max_obj: int = 3

    def check(self, category) -> None:
        n = len(category)
        h = category.base.max_hom_size()
        if n > self.max_obj:
            raise ResourceError(
                f"category has {n} objects, cap is {self.max_obj}")
        if h > self.max_hom:
            raise ResourceError(
                f"base has a hom-lattice of size {h}, cap is {self.max_hom}")
