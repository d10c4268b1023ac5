"""Cleanup memory: snap noisy vectors back to known atoms and chunks.

A ``CleanupMemory`` stores named unit-phasor vectors and answers nearest
neighbour queries under the real-part similarity kernel.  Entries carry a
kind: plain symbols, or pointers that name a stored composite chunk.
Dereferencing a pointer returns its chunk for unbinding.  Lexical scopes
are stacks of these memories linked by parent pointers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DanglingPointerError,
    DimensionError,
    MemoryEmptyError,
    NoMatchError,
    UnboundSymbolError,
)

__all__ = ["RecallResult", "CleanupMemory", "Environment"]

#: Default similarity floor for recall and deref.  Matches the decoding
#: floor: random phasors score O(1/sqrt(dim)), far below 0.1 at dim=1000.
RECALL_FLOOR = 0.1


class _VectorTable:
    """Append-only matrix of row vectors with amortized growth."""

    def __init__(self, dim: int, capacity: int = 64) -> None:
        self._dim = dim
        self._rows = 0
        self._data = np.zeros((capacity, dim), dtype=np.complex128)

    def __len__(self) -> int:
        return self._rows

    @property
    def matrix(self) -> np.ndarray:
        """View of the filled rows; no copy."""
        return self._data[: self._rows]

    def append(self, v: np.ndarray) -> int:
        if self._rows == self._data.shape[0]:
            grown = np.zeros(
                (2 * self._data.shape[0], self._dim), dtype=np.complex128
            )
            grown[: self._rows] = self._data[: self._rows]
            self._data = grown
        self._data[self._rows] = v
        self._rows += 1
        return self._rows - 1

    def replace(self, row: int, v: np.ndarray) -> None:
        self._data[row] = v


@dataclass(frozen=True)
class RecallResult:
    """Best-matching entry for a query vector."""

    name: str
    vector: np.ndarray
    similarity: float
    kind: str


class CleanupMemory:
    """Named phasor vectors with nearest neighbour recall.

    Entries are unique by name.  Pointer entries additionally carry a
    composite chunk vector, retrieved by ``deref``.  Recall and deref
    counts are tracked so benchmarks can report memory traffic.
    """

    def __init__(self, dim: int, floor: float = RECALL_FLOOR) -> None:
        if dim < 1:
            raise DimensionError(f"dimension must be >= 1, got {dim}")
        self.dim = dim
        self.floor = floor
        self.recalls = 0
        self.derefs = 0
        self._table = _VectorTable(dim)
        self._names: list[str] = []
        self._kinds: list[str] = []
        self._index: dict[str, int] = {}
        self._chunks: dict[str, np.ndarray] = {}

    def __len__(self) -> int:
        return len(self._names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def names(self, kind: str | None = None) -> list[str]:
        if kind is None:
            return list(self._names)
        return [n for n, k in zip(self._names, self._kinds) if k == kind]

    def vector(self, name: str) -> np.ndarray:
        """Stored vector for ``name``; KeyError if absent."""
        return self._table.matrix[self._index[name]]

    def chunk(self, name: str) -> np.ndarray:
        """Stored composite for pointer ``name``; KeyError if absent."""
        composite = self._chunks[name]
        self.derefs += 1
        return composite

    def kind(self, name: str) -> str:
        """Stored kind for ``name``; KeyError if absent."""
        return self._kinds[self._index[name]]

    def add(
        self,
        name: str,
        v: np.ndarray,
        kind: str = "symbol",
        replace: bool = False,
    ) -> None:
        """Store ``v`` under ``name``.

        Duplicate names are rejected unless ``replace`` is set, in which
        case the row is overwritten in place.
        """
        if v.shape[0] != self.dim:
            raise DimensionError(
                f"vector dimension {v.shape[0]} != memory dimension {self.dim}"
            )
        row = self._index.get(name)
        if row is not None:
            if not replace:
                raise ValueError(f"entry {name!r} already stored")
            self._table.replace(row, v)
            self._kinds[row] = kind
            return
        row = self._table.append(v)
        self._names.append(name)
        self._kinds.append(kind)
        self._index[name] = row

    def add_chunk(self, name: str, pointer: np.ndarray, composite: np.ndarray) -> None:
        """Store a pointer entry together with the chunk it names."""
        self.add(name, pointer, kind="pointer")
        self.attach_chunk(name, composite)

    def attach_chunk(self, name: str, composite: np.ndarray) -> None:
        """Attach a composite to an already-stored pointer entry."""
        if composite.shape[0] != self.dim:
            raise DimensionError(
                f"chunk dimension {composite.shape[0]} != memory dimension {self.dim}"
            )
        if self.kind(name) != "pointer":
            raise ValueError(f"entry {name!r} is not a pointer")
        self._chunks[name] = composite

    def recall(
        self,
        v: np.ndarray,
        kind: str | None = None,
        floor: float | None = None,
    ) -> RecallResult:
        """Best entry for ``v``, optionally restricted to one kind.

        Raises ``MemoryEmptyError`` when nothing is stored (of that kind)
        and ``NoMatchError`` when the best similarity is below the floor.
        """
        if v.shape[0] != self.dim:
            raise DimensionError(
                f"query dimension {v.shape[0]} != memory dimension {self.dim}"
            )
        self.recalls += 1
        if floor is None:
            floor = self.floor
        matrix = self._table.matrix
        sims = (matrix.conj() @ v).real / self.dim
        if kind is not None:
            mask = np.array([k == kind for k in self._kinds], dtype=bool)
            if not mask.any():
                raise MemoryEmptyError(f"no {kind} entries stored")
            sims = np.where(mask, sims, -np.inf)
        elif len(self._names) == 0:
            raise MemoryEmptyError("memory is empty")
        best = int(np.argmax(sims))
        score = float(sims[best])
        if score < floor:
            raise NoMatchError(
                f"best match {self._names[best]!r} at {score:.3f} is below "
                f"the {floor} floor"
            )
        return RecallResult(
            name=self._names[best],
            vector=matrix[best],
            similarity=score,
            kind=self._kinds[best],
        )

    def deref(self, v: np.ndarray, floor: float | None = None) -> tuple[str, np.ndarray]:
        """Resolve a pointer vector to its stored chunk.

        Returns ``(name, composite)``.  A vector that matches no stored
        pointer above the floor raises ``DanglingPointerError``.
        """
        self.derefs += 1
        try:
            hit = self.recall(v, kind="pointer", floor=floor)
        except (MemoryEmptyError, NoMatchError) as exc:
            raise DanglingPointerError(
                f"vector resolves to no stored chunk: {exc}"
            ) from exc
        # recall already bumped its own counter; keep both numbers honest
        self.recalls -= 1
        if hit.name not in self._chunks:
            raise DanglingPointerError(
                f"pointer {hit.name!r} has no chunk attached"
            )
        return hit.name, self._chunks[hit.name]

    def stats(self) -> dict[str, int]:
        return {
            "entries": len(self._names),
            "chunks": len(self._chunks),
            "recalls": self.recalls,
            "derefs": self.derefs,
        }


class Environment:
    """Chain of binding frames, innermost first.

    Each frame is its own ``CleanupMemory`` holding name -> value vectors.
    Lookup walks outward; define always writes the innermost frame, and
    redefinition in the same frame replaces the binding.
    """

    def __init__(self, dim: int, parent: "Environment | None" = None) -> None:
        self.frame = CleanupMemory(dim)
        self.parent = parent
        # name of the handle symbol minted for this scope, once one exists
        self.handle: str | None = None

    def define(self, name: str, v: np.ndarray) -> None:
        self.frame.add(name, v, replace=True)

    def lookup(self, name: str) -> np.ndarray:
        env: Environment | None = self
        while env is not None:
            if name in env.frame:
                return env.frame.vector(name)
            env = env.parent
        raise UnboundSymbolError(f"symbol {name!r} is not bound")

    def child(self, dim: int | None = None) -> "Environment":
        return Environment(dim if dim is not None else self.frame.dim, parent=self)

    def frames(self) -> list[CleanupMemory]:
        out = []
        env: Environment | None = self
        while env is not None:
            out.append(env.frame)
            env = env.parent
        return out

    def bound_names(self) -> list[str]:
        """Visible names, innermost shadowing outermost, insertion order."""
        seen: dict[str, None] = {}
        for frame in self.frames():
            for name in frame.names():
                seen.setdefault(name, None)
        return list(seen)
