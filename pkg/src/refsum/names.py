"""Person names: parsing of bibliography author fields and identity keys.

Matching across name variants is deliberately coarse: two names are treated
as the same person when the lowercased family name and the first given
initial agree, so "John Smith", "J. Smith" and "Smith, John" all collapse to
the key ``smith.j``. Anything finer would need real author disambiguation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

# Lowercase tokens folded into the family name in "Given ... Family" form,
# so "Ludwig van Beethoven" keeps "van Beethoven" as the family.
_PARTICLES = {
    "van", "von", "de", "der", "den", "del", "della", "di", "da",
    "la", "le", "ter", "ten", "op", "af",
}

_AND_SPLIT = re.compile(r"\s+and\s+")
_WS = re.compile(r"\s+")


@dataclass(frozen=True)
class PersonName:
    family: str
    given: str = ""

    @property
    def normalized_key(self) -> str:
        """Lowercased family plus first given initial, e.g. ``smith.j``."""
        family = _WS.sub(" ", self.family.strip().lower())
        for ch in self.given:
            if ch.isalnum():
                return f"{family}.{ch.lower()}"
        return family

    def display(self) -> str:
        if self.given:
            return f"{self.given} {self.family}"
        return self.family


def _clean(part: str) -> str:
    return _WS.sub(" ", part.replace("{", "").replace("}", "")).strip()


def _parse_one(raw: str) -> PersonName | None:
    raw = _clean(raw)
    if not raw or raw.lower() == "others":
        return None
    if "," in raw:
        segments = [s.strip() for s in raw.split(",")]
        family, given = segments[0], segments[-1]
        if not family:
            return None
        return PersonName(family=family, given=given)
    tokens = raw.split(" ")
    if len(tokens) == 1:
        return PersonName(family=tokens[0])
    split = len(tokens) - 1
    while split > 0 and tokens[split - 1] in _PARTICLES:
        split -= 1
    family = " ".join(tokens[split:])
    given = " ".join(tokens[:split])
    if not family:
        return None
    return PersonName(family=family, given=given)


def parse_person_names(field: str) -> list[PersonName]:
    """Split an author field on ``and`` and parse each name.

    Supports both "Family, Given" and "Given Family" forms; a bare
    ``others`` token (the et-al. convention) is dropped.
    """
    names = []
    for part in _AND_SPLIT.split(field.strip()):
        name = _parse_one(part)
        if name is not None:
            names.append(name)
    return names
