"""Linear block codes carried on named, ordered coordinate blocks.

A BlockedCode is a subspace together with a partition of its ambient
coordinates into named blocks (symbol and state variables, in this
package). Projection keeps a subset of blocks; cross-section keeps the
words that vanish off that subset, then drops the zeroed coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import (DimensionMismatchError, EnumerationLimitError,
                     FieldMismatchError, UnknownBlockError)
from .fields import MatrixF, PrimeField, Subspace, kernel

DEFAULT_ENUM_CAP = 1 << 22


@dataclass(frozen=True)
class BlockStructure:
    """Ordered (block id, dimension) pairs defining a coordinate frame."""

    blocks: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        norm = tuple((str(i), int(d)) for i, d in self.blocks)
        object.__setattr__(self, "blocks", norm)
        seen = set()
        for bid, d in norm:
            if d < 0:
                raise ValueError(f"block {bid!r} has negative dim {d}")
            if bid in seen:
                raise ValueError(f"duplicate block id {bid!r}")
            seen.add(bid)

    @cached_property
    def total(self) -> int:
        return sum(d for _, d in self.blocks)

    @cached_property
    def _offsets(self) -> dict[str, tuple[int, int]]:
        out: dict[str, tuple[int, int]] = {}
        at = 0
        for bid, d in self.blocks:
            out[bid] = (at, d)
            at += d
        return out

    def ids(self) -> tuple[str, ...]:
        return tuple(bid for bid, _ in self.blocks)

    def dim(self, block_id: str) -> int:
        return self._entry(block_id)[1]

    def offset(self, block_id: str) -> int:
        return self._entry(block_id)[0]

    def _entry(self, block_id: str) -> tuple[int, int]:
        try:
            return self._offsets[block_id]
        except KeyError:
            raise UnknownBlockError(f"unknown block {block_id!r}") from None

    def positions(self, block_ids: Sequence[str]) -> np.ndarray:
        """Column indices of the given blocks, in the order given."""
        block_ids = list(block_ids)
        if len(set(block_ids)) != len(block_ids):
            raise ValueError(f"duplicate block ids in {block_ids!r}")
        cols: list[int] = []
        for bid in block_ids:
            at, d = self._entry(bid)
            cols.extend(range(at, at + d))
        return np.asarray(cols, dtype=np.intp)

    def restrict(self, block_ids: Sequence[str]) -> "BlockStructure":
        return BlockStructure(tuple((bid, self.dim(bid)) for bid in block_ids))


class BlockedCode:
    """A linear code whose ambient coordinates are grouped into blocks."""

    __slots__ = ("structure", "space")

    def __init__(self, structure: BlockStructure, space: Subspace) -> None:
        if space.ambient != structure.total:
            raise DimensionMismatchError(
                f"space ambient {space.ambient} != structure total {structure.total}")
        self.structure = structure
        self.space = space

    @classmethod
    def from_rows(cls, field: PrimeField, structure: BlockStructure, rows) -> "BlockedCode":
        return cls(structure, Subspace.spanned_by(field, structure.total, rows))

    @property
    def field(self) -> PrimeField:
        return self.space.field

    @property
    def dim(self) -> int:
        return self.space.dim

    def project(self, block_ids: Sequence[str]) -> "BlockedCode":
        """Image of coordinate dropping: keep the given blocks, in that order."""
        cols = self.structure.positions(block_ids)
        rows = self.space.basis.array[:, cols]
        sub = self.structure.restrict(block_ids)
        return BlockedCode(sub, Subspace.spanned_by(self.field, sub.total, MatrixF(self.field, rows)))

    def cross_section(self, block_ids: Sequence[str]) -> "BlockedCode":
        """Subcode vanishing off the given blocks, seen on those blocks."""
        keep = self.structure.positions(block_ids)
        kept = set(block_ids)
        drop = self.structure.positions([b for b in self.structure.ids() if b not in kept])
        g = self.space.basis.array
        # coefficient vectors y with y @ g[:, drop] = 0
        coeffs = kernel(MatrixF(self.field, g[:, drop].T))
        rows = (coeffs.basis.array @ g[:, keep]) % self.field.p
        sub = self.structure.restrict(block_ids)
        return BlockedCode(sub, Subspace.spanned_by(self.field, sub.total, MatrixF(self.field, rows)))

    def dual(self) -> "BlockedCode":
        return BlockedCode(self.structure, self.space.orthogonal())

    def enumerate(self, cap: int = DEFAULT_ENUM_CAP) -> Iterator[tuple[int, ...]]:
        """All codewords, most significant coefficient first."""
        p = self.field.p
        count = p ** self.dim
        if count > cap:
            raise EnumerationLimitError(f"{count} codewords exceed the cap {cap}")
        basis = self.space.basis.array
        powers = p ** np.arange(self.dim - 1, -1, -1, dtype=np.int64)
        chunk = 1 << 13
        for lo in range(0, count, chunk):
            idx = np.arange(lo, min(lo + chunk, count), dtype=np.int64)
            coeffs = (idx[:, None] // powers) % p
            words = (coeffs @ basis) % p
            for w in words:
                yield tuple(int(x) for x in w)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BlockedCode):
            return NotImplemented
        return self.structure == other.structure and self.space == other.space

    def __repr__(self) -> str:
        return f"<code dim {self.dim} on blocks {list(self.structure.ids())!r}>"


def format_word(field: PrimeField, word: Sequence[int]) -> str:
    """Residues as a digit string for p <= 10, comma-separated otherwise."""
    vals = [int(x) % field.p for x in word]
    if field.p <= 10:
        return "".join(str(x) for x in vals)
    return ",".join(str(x) for x in vals)


def parse_word(field: PrimeField, text: str) -> tuple[int, ...]:
    """Inverse of format_word; the empty string is the empty word."""
    text = text.strip()
    if not text:
        return ()
    if field.p <= 10 and "," not in text:
        if not text.isdigit():
            raise ValueError(f"not a digit string: {text!r}")
        return tuple(int(ch) % field.p for ch in text)
    return tuple(int(part) % field.p for part in text.split(","))
