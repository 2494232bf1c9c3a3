"""The benchmark pattern families and their reference corpus alphabets."""

from __future__ import annotations

import enum
import string
from dataclasses import dataclass


class Family(enum.Enum):
    RUNNING_EXAMPLE = "running"  # ((ab)|b)*ba
    ALPHABET_CHAIN = "chain"  # abc...z
    PREFIXED_ALPHABET_CHAIN = "prefixed-chain"  # (x|y|z)abc...z
    OPT_POW = "optpow"  # (a?)^n a^n
    NONDET_SUFFIX = "nondet"  # ((a|b)*)a(a|b)^n

    @property
    def takes_n(self) -> bool:
        return self in (Family.OPT_POW, Family.NONDET_SUFFIX)


LOWER = string.ascii_lowercase.encode()


@dataclass(frozen=True)
class PatternSpec:
    family: Family
    n: int | None = None

    def __post_init__(self):
        if self.family.takes_n:
            if self.n is None or self.n < 1:
                raise ValueError(f"{self.family.value} needs n >= 1")
        elif self.n is not None:
            raise ValueError(f"{self.family.value} takes no n")

    @property
    def pattern(self) -> str:
        return family_pattern(self.family, self.n)

    @property
    def size(self) -> int:
        """Number of letter occurrences, from the closed form."""
        return {
            Family.RUNNING_EXAMPLE: lambda n: 5,
            Family.ALPHABET_CHAIN: lambda n: 26,
            Family.PREFIXED_ALPHABET_CHAIN: lambda n: 29,
            Family.OPT_POW: lambda n: 2 * n,
            Family.NONDET_SUFFIX: lambda n: 2 * n + 3,
        }[self.family](self.n)

    @property
    def alphabet(self) -> bytes:
        """Corpus alphabet used with this family in the reference experiments."""
        return b"ab" if self.family is Family.NONDET_SUFFIX else LOWER

    def __str__(self):
        return self.family.value if self.n is None else f"{self.family.value}({self.n})"


def family_pattern(family: Family, n: int | None = None) -> str:
    family = Family(family)
    if family is Family.RUNNING_EXAMPLE:
        return "(ab|b)*ba"
    if family is Family.ALPHABET_CHAIN:
        return string.ascii_lowercase
    if family is Family.PREFIXED_ALPHABET_CHAIN:
        return "(x|y|z)" + string.ascii_lowercase
    if n is None or n < 1:
        raise ValueError(f"{family.value} needs n >= 1")
    if family is Family.OPT_POW:
        return "(a?)" * n + "a" * n
    return "((a|b)*)a" + "(a|b)" * n
