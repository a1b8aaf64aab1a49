"""Finite lattices with joins, covers, and the maximal predecessor sum.

Two realizations: the Boolean cube {0,1}^n, whose elements are the integer
values of the n-bit words, and explicit lattices described by a covering
relation, whose elements are dense indices in declaration order.  The
artificial bottom sits below every element but is never stored; an element
with no in-lattice predecessor simply returns no covers.

Dense subsets and dense function tables are Python ints with one bit per
element id, which keeps closure sweeps cheap even at 2^12 elements.
"""

from __future__ import annotations

import heapq
from pathlib import Path
from typing import Iterable, Sequence

from .errors import InvalidElementError, LatticeValidationError


def mask_elements(mask: int) -> list[int]:
    """Set bit positions of ``mask`` in ascending (canonical) order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def elements_mask(elems: Iterable[int]) -> int:
    m = 0
    for a in elems:
        m |= 1 << a
    return m


class Lattice:
    """Shared machinery; concrete orders supply the primitive queries."""

    size: int
    top: int

    # ---- primitives -------------------------------------------------

    def leq(self, a: int, b: int) -> bool:
        raise NotImplementedError

    def join(self, a: int, b: int) -> int:
        raise NotImplementedError

    def immediate_predecessors(self, a: int) -> tuple[int, ...]:
        raise NotImplementedError

    def topo_order(self) -> Sequence[int]:
        """Every element after all of its immediate predecessors."""
        raise NotImplementedError

    def element_name(self, a: int) -> str:
        raise NotImplementedError

    def parse_element(self, name: str) -> int:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    # ---- shared -----------------------------------------------------

    def elements(self) -> range:
        return range(self.size)

    def check_element(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.size:
            raise InvalidElementError(f"{a!r} is not an element of {self.describe()}")
        return a

    def min_antichain(self, points: Iterable[int]) -> list[int]:
        """Minimal elements of a point set, in canonical order.

        Pairwise dominance testing; the inputs here are always small
        collections of sample points, so O(k^2) comparisons are fine.
        """
        elems = sorted({self.check_element(a) for a in points})
        return [
            a
            for a in elems
            if not any(b != a and self.leq(b, a) for b in elems)
        ]

    def up_closure(self, mask: int) -> int:
        """Dense indicator of the union of up-sets of the set bits of mask."""
        out = 0
        for a in self.topo_order():
            if mask >> a & 1 or any(out >> b & 1 for b in self.immediate_predecessors(a)):
                out |= 1 << a
        return out

    def shadow(self, mask: int) -> int:
        """Elements having at least one immediate predecessor inside mask."""
        out = 0
        for a in self.elements():
            if any(mask >> b & 1 for b in self.immediate_predecessors(a)):
                out |= 1 << a
        return out

    def sigma(self) -> int:
        """Maximal predecessor sum over descending cover chains from the top.

        Memoized per element: the best chain below an element depends only
        on that element, so one sweep in topological order suffices.
        """
        best: dict[int, int] = {}
        for a in self.topo_order():
            preds = self.immediate_predecessors(a)
            best[a] = len(preds) + max(best[b] for b in preds) if preds else 0
        return best[self.top]


class CubeLattice(Lattice):
    """{0,1}^n under the coordinatewise order; join is bitwise OR."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("cube dimension must be at least 1")
        self.n = n
        self.size = 1 << n
        self.top = self.size - 1
        self._clear_masks: list[int] | None = None

    def __eq__(self, other) -> bool:
        return isinstance(other, CubeLattice) and other.n == self.n

    def __hash__(self) -> int:
        return hash(("cube", self.n))

    def __repr__(self) -> str:
        return f"CubeLattice({self.n})"

    def describe(self) -> str:
        return f"cube:{self.n}"

    def leq(self, a: int, b: int) -> bool:
        self.check_element(a)
        self.check_element(b)
        return a | b == b

    def join(self, a: int, b: int) -> int:
        self.check_element(a)
        self.check_element(b)
        return a | b

    def immediate_predecessors(self, a: int) -> tuple[int, ...]:
        self.check_element(a)
        # clearing a higher bit yields a smaller word, so ascending output
        return tuple(a & ~(1 << j) for j in reversed(range(self.n)) if a >> j & 1)

    def topo_order(self) -> range:
        return range(self.size)  # numeric order refines the cube order

    def sigma(self) -> int:
        return self.n * (self.n + 1) // 2

    def element_name(self, a: int) -> str:
        self.check_element(a)
        return format(a, f"0{self.n}b")

    def parse_element(self, name: str) -> int:
        if len(name) != self.n or set(name) - {"0", "1"}:
            raise InvalidElementError(f"{name!r} is not a {self.n}-bit word")
        return int(name, 2)

    def _coordinate_clear_masks(self) -> list[int]:
        # mask j marks every element whose j-th coordinate is 0
        if self._clear_masks is None:
            full = (1 << self.size) - 1
            masks = []
            for j in range(self.n):
                spaced = full // ((1 << (2 << j)) - 1)
                masks.append(spaced * ((1 << (1 << j)) - 1))
            self._clear_masks = masks
        return self._clear_masks

    def up_closure(self, mask: int) -> int:
        # bit-parallel sweep: one pass per coordinate propagates 0 -> 1
        for j, zeros in enumerate(self._coordinate_clear_masks()):
            mask |= (mask & zeros) << (1 << j)
        return mask

    def shadow(self, mask: int) -> int:
        out = 0
        for j, zeros in enumerate(self._coordinate_clear_masks()):
            out |= (mask & zeros) << (1 << j)
        return out


class ExplicitLattice(Lattice):
    """Lattice given by named elements and covering pairs, fully validated.

    Validation establishes antisymmetry (no cycles), a unique top element
    and a unique least upper bound for every pair; after that the instance
    is immutable and every query is table lookup.
    """

    def __init__(
        self,
        names: Sequence[str],
        covers: Iterable[tuple[str, str]],
        source_path: str | None = None,
    ):
        names = tuple(names)
        if not names:
            raise LatticeValidationError("a lattice needs at least one element")
        seen: set[str] = set()
        for nm in names:
            if nm in seen:
                raise LatticeValidationError(f"duplicate element {nm!r}")
            seen.add(nm)
        self.names = names
        self.size = len(names)
        self.source_path = source_path
        self._ids = {nm: i for i, nm in enumerate(names)}

        succ: list[set[int]] = [set() for _ in range(self.size)]
        for lo_name, hi_name in covers:
            lo = self._ids.get(lo_name)
            hi = self._ids.get(hi_name)
            if lo is None or hi is None:
                missing = lo_name if lo is None else hi_name
                raise LatticeValidationError(f"cover names unknown element {missing!r}")
            if lo == hi:
                raise LatticeValidationError(f"cover relates {lo_name!r} to itself")
            succ[lo].add(hi)

        # reachability over the cover digraph: up-set of each element as a bit set
        ups = []
        for a in range(self.size):
            reach = 1 << a
            stack = [a]
            while stack:
                u = stack.pop()
                for v in succ[u]:
                    if not reach >> v & 1:
                        reach |= 1 << v
                        stack.append(v)
            ups.append(reach)
        for a in range(self.size):
            for b in mask_elements(ups[a]):
                if b != a and ups[b] >> a & 1:
                    raise LatticeValidationError(
                        f"cycle through elements {names[a]!r} and {names[b]!r}"
                    )
        self._ups = ups

        maximal = [a for a in range(self.size) if ups[a] == 1 << a]
        if len(maximal) != 1:
            a, b = maximal[0], maximal[1]
            raise LatticeValidationError(
                f"elements {names[a]!r} and {names[b]!r} are both maximal, "
                "so the pair has no upper bound"
            )
        self.top = maximal[0]

        # unique join for every pair: the minimum of the common up-set
        join_table = [[0] * self.size for _ in range(self.size)]
        for a in range(self.size):
            join_table[a][a] = a
            for b in range(a + 1, self.size):
                common = ups[a] & ups[b]
                j = None
                for c in mask_elements(common):
                    if ups[c] & common == common:
                        j = c
                        break
                if j is None:
                    minimal_ubs = [
                        names[c]
                        for c in mask_elements(common)
                        if not any(
                            c2 != c and ups[c2] >> c & 1
                            for c2 in mask_elements(common)
                        )
                    ]
                    raise LatticeValidationError(
                        f"elements {names[a]!r} and {names[b]!r} have no unique "
                        f"least upper bound (minimal upper bounds: {minimal_ubs})"
                    )
                join_table[a][b] = join_table[b][a] = j
        self._join = join_table

        # true covers from the closure; input pairs may contain transitive edges
        below = [0] * self.size
        for b in range(self.size):
            for a in mask_elements(ups[b] & ~(1 << b)):
                below[a] |= 1 << b
        self._preds = tuple(
            tuple(
                b
                for b in mask_elements(below[a])
                if ups[b] & below[a] == 1 << b
            )
            for a in range(self.size)
        )

        indeg = [len(p) for p in self._preds]
        above: list[list[int]] = [[] for _ in range(self.size)]
        for a in range(self.size):
            for b in self._preds[a]:
                above[b].append(a)
        heap = [a for a in range(self.size) if indeg[a] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            u = heapq.heappop(heap)
            order.append(u)
            for v in above[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    heapq.heappush(heap, v)
        self._topo = tuple(order)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExplicitLattice)
            and other.names == self.names
            and other._ups == self._ups
        )

    def __hash__(self) -> int:
        return hash(("explicit", self.names, tuple(self._ups)))

    def __repr__(self) -> str:
        return f"ExplicitLattice({self.size} elements)"

    def describe(self) -> str:
        return self.source_path or f"explicit:{self.size}"

    def leq(self, a: int, b: int) -> bool:
        self.check_element(a)
        self.check_element(b)
        return bool(self._ups[a] >> b & 1)

    def join(self, a: int, b: int) -> int:
        self.check_element(a)
        self.check_element(b)
        return self._join[a][b]

    def immediate_predecessors(self, a: int) -> tuple[int, ...]:
        self.check_element(a)
        return self._preds[a]

    def topo_order(self) -> tuple[int, ...]:
        return self._topo

    def element_name(self, a: int) -> str:
        self.check_element(a)
        return self.names[a]

    def parse_element(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            raise InvalidElementError(
                f"{name!r} is not an element of {self.describe()}"
            ) from None


def validate_explicit(
    names: Sequence[str],
    covers: Iterable[tuple[str, str]],
    source_path: str | None = None,
) -> ExplicitLattice:
    """Validate a cover-relation description and return the lattice.

    Raises LatticeValidationError naming the first offending pair when the
    order has a cycle, more than one maximal element, or a pair without a
    unique least upper bound.
    """
    return ExplicitLattice(names, covers, source_path=source_path)


def parse_lattice(text: str, source: str = "<lattice>") -> ExplicitLattice:
    """Parse the one-record-per-line lattice format.

    Header ``lattice v1``, then ``elem <name>`` lines in declaration order,
    then ``cover <lower> <upper>`` lines.  Blank lines and ``#`` comments
    are skipped.  Errors carry the source name and line number.
    """
    names: list[str] = []
    covers: list[tuple[str, str]] = []
    declared: set[str] = set()
    saw_header = False
    saw_cover = False

    def fail(lineno: int, message: str) -> LatticeValidationError:
        return LatticeValidationError(f"{source}:{lineno}: {message}")

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not saw_header:
            if line != "lattice v1":
                raise fail(lineno, f"expected 'lattice v1' header, got {line!r}")
            saw_header = True
            continue
        tokens = line.split()
        if tokens[0] == "elem":
            if len(tokens) != 2:
                raise fail(lineno, "elem takes exactly one name")
            if saw_cover:
                raise fail(lineno, "elem lines must precede cover lines")
            if tokens[1] in declared:
                raise fail(lineno, f"duplicate element {tokens[1]!r}")
            declared.add(tokens[1])
            names.append(tokens[1])
        elif tokens[0] == "cover":
            if len(tokens) != 3:
                raise fail(lineno, "cover takes exactly two names")
            for nm in tokens[1:]:
                if nm not in declared:
                    raise fail(lineno, f"cover names unknown element {nm!r}")
            saw_cover = True
            covers.append((tokens[1], tokens[2]))
        else:
            raise fail(lineno, f"unknown directive {tokens[0]!r}")
    if not saw_header:
        raise LatticeValidationError(f"{source}: empty file, expected 'lattice v1' header")
    try:
        return ExplicitLattice(names, covers, source_path=source)
    except LatticeValidationError as exc:
        raise LatticeValidationError(f"{source}: {exc}") from None


def load_lattice(path: str | Path) -> ExplicitLattice:
    path = Path(path)
    return parse_lattice(path.read_text(), source=str(path))
