"""
Cartan data, positive roots, simple reflections and sink-adapted reduced words
for simply-laced Dynkin diagrams.

Vertices are 1-based throughout.  Labeling conventions:

* ``A_n``: the path ``1 - 2 - ... - n``.
* ``D_n``: vertex 3 is the branch point, adjacent to the leaves 1 and 2 and to
  the chain ``3 - 4 - ... - n``.
* ``E_n``: Bourbaki, i.e. the chain ``1 - 3 - 4 - 5 - ... - n`` with vertex 2
  attached to vertex 4.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

__all__ = [
    "DynkinDiagram", "Quiver", "RootSystem", "AdaptedWord",
    "build_diagram", "build_quiver", "positive_roots", "reflect",
    "adapted_word", "homogeneity_solutions", "is_adapted", "expected_nu",
]

Root = tuple[int, ...]
Arrow = tuple[int, int]


@dataclass(frozen=True)
class DynkinDiagram:
    type_letter: str
    rank: int
    edges: frozenset[frozenset[int]]

    @property
    def vertices(self) -> range:
        return range(1, self.rank + 1)

    @property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        rows = []
        for i in range(1, n + 1):
            rows.append(tuple(
                2 if i == j else (-1 if frozenset((i, j)) in self.edges else 0)
                for j in range(1, n + 1)
            ))
        return tuple(rows)

    def inner(self, x: Iterable[int], y: Iterable[int]) -> int:
        """The symmetric bilinear form ``(x, y)_Q`` given by the Cartan matrix."""
        x, y = tuple(x), tuple(y)
        a = self.cartan
        return sum(x[i] * a[i][j] * y[j]
                   for i in range(self.rank) for j in range(self.rank))

    def __str__(self) -> str:
        return f"{self.type_letter}{self.rank}"


@dataclass(frozen=True)
class Quiver:
    diagram: DynkinDiagram
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        under = [frozenset(a) for a in self.arrows]
        if len(set(under)) != len(under) or set(under) != set(self.diagram.edges):
            raise ValueError(
                f"arrows {list(self.arrows)} do not orient each edge of "
                f"{self.diagram} exactly once"
            )

    @property
    def n(self) -> int:
        return self.diagram.rank

    def is_sink(self, i: int) -> bool:
        return all(a[0] != i for a in self.arrows)

    def is_source(self, i: int) -> bool:
        return all(a[1] != i for a in self.arrows)

    def sinks(self) -> list[int]:
        return [i for i in self.diagram.vertices if self.is_sink(i)]

    def reflected(self, i: int) -> "Quiver":
        """Reverse every arrow incident to ``i``."""
        arrows = tuple((b, a) if i in (a, b) else (a, b) for a, b in self.arrows)
        return Quiver(self.diagram, arrows)

    def __str__(self) -> str:
        return ",".join(f"{a}>{b}" for a, b in self.arrows)


@dataclass(frozen=True)
class RootSystem:
    diagram: DynkinDiagram
    positive_roots: tuple[Root, ...]

    @property
    def nu(self) -> int:
        return len(self.positive_roots)


@dataclass(frozen=True)
class AdaptedWord:
    quiver: Quiver
    word: tuple[int, ...]
    root_order: tuple[Root, ...]
    # quivers[k] is Q_{k+1}: the quiver in which word[k] is a sink
    quivers: tuple[Quiver, ...] = field(repr=False, compare=False)

    @property
    def nu(self) -> int:
        return len(self.word)

    @property
    def n(self) -> int:
        return self.quiver.n

    def index_of(self, root: Iterable[int]) -> int:
        """0-based position of ``root`` in the root order."""
        return self.root_order.index(tuple(root))

    def simple_position(self, i: int) -> int:
        return self.index_of(unit(self.n, i))

    def dimension_of(self, c: Iterable[int]) -> Root:
        d = [0] * self.n
        for ct, alpha in zip(c, self.root_order):
            if ct:
                for k in range(self.n):
                    d[k] += ct * alpha[k]
        return tuple(d)


def unit(n: int, i: int) -> Root:
    return tuple(1 if k == i - 1 else 0 for k in range(n))


def expected_nu(type_letter: str, rank: int) -> int:
    if type_letter == "A":
        return rank * (rank + 1) // 2
    if type_letter == "D":
        return rank * (rank - 1)
    return {6: 36, 7: 63, 8: 120}[rank]


def build_diagram(type_letter: str, rank: int) -> DynkinDiagram:
    type_letter = type_letter.upper()
    if type_letter == "A":
        if rank < 1:
            raise ValueError(f"type A requires rank >= 1, got {rank}")
        edges = [(i, i + 1) for i in range(1, rank)]
    elif type_letter == "D":
        if rank < 4:
            raise ValueError(f"type D requires rank >= 4, got {rank}")
        edges = [(1, 3), (2, 3)] + [(i, i + 1) for i in range(3, rank)]
    elif type_letter == "E":
        if rank not in (6, 7, 8):
            raise ValueError(f"type E requires rank in {{6, 7, 8}}, got {rank}")
        edges = [(1, 3), (2, 4)] + [(i, i + 1) for i in range(3, rank)]
    else:
        raise ValueError(f"unknown Dynkin type {type_letter!r}; expected A, D or E")
    return DynkinDiagram(type_letter, rank, frozenset(frozenset(e) for e in edges))


def build_quiver(diagram: DynkinDiagram, arrows: Iterable[Arrow] | None = None) -> Quiver:
    """Orient ``diagram``; by default every edge ``{i, j}`` with ``i < j`` becomes ``i -> j``."""
    if arrows is None:
        arrows = sorted(tuple(sorted(e)) for e in diagram.edges)
    return Quiver(diagram, tuple(tuple(a) for a in arrows))


def reflect(root: Iterable[int], i: int, diagram: DynkinDiagram) -> Root:
    """Simple reflection ``s_i(z) = z - (z, alpha_i) alpha_i``."""
    z = list(root)
    if not 1 <= i <= diagram.rank:
        raise IndexError(f"vertex {i} out of range 1..{diagram.rank}")
    if len(z) != diagram.rank:
        raise ValueError(f"root has length {len(z)}, expected {diagram.rank}")
    row = diagram.cartan[i - 1]
    z[i - 1] -= sum(row[j] * z[j] for j in range(diagram.rank))
    return tuple(z)


def _grlex_key(root: Root):
    return (sum(root), tuple(-x for x in root))


def positive_roots(diagram: DynkinDiagram) -> RootSystem:
    n = diagram.rank
    simple = [unit(n, i) for i in diagram.vertices]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for z in frontier:
            for i in diagram.vertices:
                w = reflect(z, i, diagram)
                if all(x >= 0 for x in w) and w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return RootSystem(diagram, tuple(sorted(seen, key=_grlex_key)))


def _apply_word(z: Root, prefix: Iterable[int], diagram: DynkinDiagram) -> Root:
    # s_{i_1} ... s_{i_k}(z): the rightmost reflection acts first
    for i in reversed(tuple(prefix)):
        z = reflect(z, i, diagram)
    return z


def adapted_word(quiver: Quiver) -> AdaptedWord:
    """
    Sink elimination: repeatedly emit the smallest admissible sink of the
    current quiver and reverse the arrows at it, ``nu`` times.

    A sink is admissible when its root ``s_{i_1}...s_{i_{k-1}}(alpha_i)`` is
    positive and new.  The bare smallest-sink rule can revisit a vertex before
    its neighbours catch up, which makes the word non-reduced.
    """
    diagram = quiver.diagram
    n = diagram.rank
    nu = len(positive_roots(diagram).positive_roots)
    word: list[int] = []
    roots: list[Root] = []
    quivers: list[Quiver] = []
    current = quiver
    for _ in range(nu):
        for i in current.sinks():
            alpha = _apply_word(unit(n, i), word, diagram)
            if all(x >= 0 for x in alpha) and alpha not in roots:
                break
        else:
            raise RuntimeError(f"no admissible sink in {current}")
        word.append(i)
        roots.append(alpha)
        quivers.append(current)
        current = current.reflected(i)
    return AdaptedWord(quiver, tuple(word), tuple(roots), tuple(quivers))


def is_adapted(word: Iterable[int], quiver: Quiver) -> bool:
    current = quiver
    for i in word:
        if not current.is_sink(i):
            return False
        current = current.reflected(i)
    return True


def homogeneity_solutions(aw: AdaptedWord, d: Iterable[int]) -> list[tuple[int, ...]]:
    """All ``c`` in N^nu with ``sum_t c_t alpha^t = d``, in lexicographic order."""
    d = tuple(d)
    if len(d) != aw.n or any(x < 0 for x in d):
        raise ValueError(f"dimension vector {d} must have {aw.n} nonnegative entries")
    roots = aw.root_order
    nu = len(roots)
    out: list[tuple[int, ...]] = []
    c = [0] * nu

    def search(t: int, rest: list[int]) -> None:
        if t == nu:
            if not any(rest):
                out.append(tuple(c))
            return
        alpha = roots[t]
        bound = min(rest[k] // alpha[k] for k in range(len(rest)) if alpha[k] > 0)
        for m in range(bound, -1, -1):
            c[t] = m
            search(t + 1, [r - m * a for r, a in zip(rest, alpha)])
        c[t] = 0

    search(0, list(d))
    return sorted(out)


def reduced_words(diagram: DynkinDiagram) -> Iterator[tuple[int, ...]]:
    """Brute-force enumeration of reduced words of the longest element (tiny ranks only)."""
    nu = len(positive_roots(diagram).positive_roots)
    n = diagram.rank

    def extend(prefix: tuple[int, ...]):
        if len(prefix) == nu:
            yield prefix
            return
        for i in diagram.vertices:
            # the new root must be positive for the word to stay reduced
            alpha = _apply_word(unit(n, i), prefix, diagram)
            if all(x >= 0 for x in alpha):
                yield from extend(prefix + (i,))

    yield from extend(())
