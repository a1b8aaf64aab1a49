"""Function representations over a lattice and the XOR-of-monotone algebra.

Every representation evaluates over in-lattice elements only.  The implicit
bottom evaluates to 0 for every function by convention and is never stored
or queried; the two places where it matters (local minimality at elements
without in-lattice predecessors, the leading 0 in chain alternation counts)
handle it by rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .errors import InternalError, InvalidChainError
from .lattice import Lattice, elements_mask, mask_elements


@dataclass(frozen=True)
class DenseFunction:
    """Explicit truth table: bit i of ``mask`` is the value at element i."""

    lattice: Lattice
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask < (1 << self.lattice.size):
            raise ValueError("dense mask does not fit the lattice")

    @classmethod
    def from_bits(cls, lattice: Lattice, bits: str) -> "DenseFunction":
        if len(bits) != lattice.size or set(bits) - {"0", "1"}:
            raise ValueError(
                f"dense payload must be exactly {lattice.size} characters of 0/1"
            )
        mask = 0
        for i, ch in enumerate(bits):
            if ch == "1":
                mask |= 1 << i
        return cls(lattice, mask)

    def bits(self) -> str:
        return "".join("1" if self.mask >> i & 1 else "0" for i in range(self.lattice.size))

    def evaluate(self, x: int) -> int:
        self.lattice.check_element(x)
        return self.mask >> x & 1

    __call__ = evaluate

    def dense(self) -> "DenseFunction":
        return self


@dataclass(frozen=True)
class MonotoneDNF:
    """Disjunction of the up-sets of an antichain of minimal elements.

    ``size`` is the number of minimal elements.  An empty antichain is the
    constant-0 function.
    """

    lattice: Lattice
    minimals: tuple[int, ...] = ()

    def __post_init__(self):
        elems = sorted({self.lattice.check_element(a) for a in self.minimals})
        for i, a in enumerate(elems):
            for b in elems[i + 1 :]:
                if self.lattice.leq(a, b) or self.lattice.leq(b, a):
                    raise ValueError(
                        "minimals are not an antichain: "
                        f"{self.lattice.element_name(a)} and {self.lattice.element_name(b)} "
                        "are comparable"
                    )
        object.__setattr__(self, "minimals", tuple(elems))

    @property
    def size(self) -> int:
        return len(self.minimals)

    def evaluate(self, x: int) -> int:
        self.lattice.check_element(x)
        return int(any(self.lattice.leq(a, x) for a in self.minimals))

    __call__ = evaluate

    def dense(self) -> DenseFunction:
        return DenseFunction(
            self.lattice, self.lattice.up_closure(elements_mask(self.minimals))
        )


@dataclass(frozen=True)
class XorHypothesis:
    """Parity of an ordered list of monotone levels; no levels means 0."""

    lattice: Lattice
    levels: tuple[MonotoneDNF, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        for lv in self.levels:
            if lv.lattice != self.lattice:
                raise ValueError("level defined over a different lattice")

    @property
    def size(self) -> int:
        return sum(lv.size for lv in self.levels)

    def evaluate(self, x: int) -> int:
        v = 0
        for lv in self.levels:
            v ^= lv.evaluate(x)
        return v

    __call__ = evaluate

    def dense(self) -> DenseFunction:
        m = 0
        for lv in self.levels:
            m ^= lv.dense().mask
        return DenseFunction(self.lattice, m)


@dataclass(frozen=True)
class ComposedTarget:
    """Outer truth table applied to monotone inner functions.

    ``outer`` has one bit per inner-value tuple, the first inner function in
    the least significant position.  Evaluation never special-cases the
    all-zero tuple: the bottom convention concerns the implicit bottom only,
    so a real element where every inner function is 0 reads outer bit 0.
    """

    lattice: Lattice
    outer: int
    inner: tuple[MonotoneDNF, ...]

    def __post_init__(self):
        object.__setattr__(self, "inner", tuple(self.inner))
        if not self.inner:
            raise ValueError("a composed target needs at least one inner function")
        for g in self.inner:
            if g.lattice != self.lattice:
                raise ValueError("inner function defined over a different lattice")
        if not 0 <= self.outer < (1 << (1 << self.d)):
            raise ValueError(f"outer table must hold exactly {1 << self.d} bits")

    @property
    def d(self) -> int:
        return len(self.inner)

    @property
    def size(self) -> int:
        return sum(g.size for g in self.inner)

    @property
    def outer_at_origin(self) -> int:
        return self.outer & 1

    def evaluate(self, x: int) -> int:
        idx = 0
        for i, g in enumerate(self.inner):
            idx |= g.evaluate(x) << i
        return self.outer >> idx & 1

    __call__ = evaluate

    def dense(self) -> DenseFunction:
        gmasks = [g.dense().mask for g in self.inner]
        out = 0
        for x in self.lattice.elements():
            idx = 0
            for i, gm in enumerate(gmasks):
                idx |= (gm >> x & 1) << i
            if self.outer >> idx & 1:
                out |= 1 << x
        return DenseFunction(self.lattice, out)


Representation = Union[DenseFunction, MonotoneDNF, XorHypothesis, ComposedTarget]


def global_min(f: Representation) -> list[int]:
    """Points of value 1 with value 0 strictly everywhere below.

    One closure sweep gives, at each element, whether some point at or
    below it has value 1; a point is globally minimal when it has value 1
    and no immediate predecessor carries that flag.
    """
    fd = f.dense()
    lat = fd.lattice
    reach = lat.up_closure(fd.mask)
    return mask_elements(fd.mask & ~lat.shadow(reach))


def local_min(f: Representation) -> list[int]:
    """Points of value 1 whose immediate predecessors all have value 0.

    An element without in-lattice predecessors qualifies whenever its own
    value is 1, since its only predecessor is the implicit bottom.
    """
    fd = f.dense()
    lat = fd.lattice
    return mask_elements(fd.mask & ~lat.shadow(fd.mask))


def monotone_closure(f: Representation) -> MonotoneDNF:
    """Least monotone function implied by f, as its minimal-element antichain."""
    fd = f.dense()
    return MonotoneDNF(fd.lattice, tuple(global_min(fd)))


def strict_decompose(f: Representation, cap: int | None = None) -> XorHypothesis:
    """Peel monotone closures off f until nothing remains.

    Each level is the closure of the current residue and the next residue
    is their XOR.  The XOR of all levels reproduces f exactly; consecutive
    levels strictly shrink and share no minimal elements; the level count
    is the monotonicity degree.  ``cap`` bounds the level count (default:
    the element count, which the recurrence can never exceed); hitting it
    means a bug, not bad input.
    """
    fd = f.dense()
    lat = fd.lattice
    if cap is None:
        cap = lat.size
    if cap < 1:
        raise ValueError("cap must be positive")
    levels = []
    cur = fd.mask
    while cur:
        if len(levels) == cap:
            raise InternalError(f"decomposition did not terminate within {cap} levels")
        reach = lat.up_closure(cur)
        levels.append(MonotoneDNF(lat, tuple(mask_elements(cur & ~lat.shadow(reach)))))
        cur ^= reach
    return XorHypothesis(lat, tuple(levels))


def monotone_degree(f: Representation) -> int:
    """Least d for which f is d-monotone; 0 exactly for the constant-0 function."""
    return len(strict_decompose(f).levels)


def chain_alternations(f: Representation, chain: Sequence[int]) -> int:
    """Value changes along 0, f(x1), ..., f(xt) for a strictly ascending chain.

    The leading 0 models the implicit bottom, where every function is 0.
    """
    lat = f.lattice
    xs = [lat.check_element(x) for x in chain]
    for a, b in zip(xs, xs[1:]):
        if a == b or not lat.leq(a, b):
            raise InvalidChainError(
                f"{lat.element_name(a)} followed by {lat.element_name(b)} "
                "is not strictly ascending"
            )
    changes = 0
    prev = 0
    for x in xs:
        v = f.evaluate(x)
        if v != prev:
            changes += 1
            prev = v
    return changes


def implies(g: Representation, h: Representation) -> bool:
    """Pointwise g(x) <= h(x) over the whole lattice."""
    return g.dense().mask & ~h.dense().mask == 0


def nested_disjoint_violation(x: XorHypothesis) -> str | None:
    """Why the levels fail the shrinking, minim-disjoint shape, if they do.

    Returns None when every level implies its predecessor, differs from it,
    and shares no minimal element with it; otherwise a one-line reason.
    """
    for i in range(len(x.levels) - 1):
        lo, hi = x.levels[i], x.levels[i + 1]
        if not implies(hi, lo):
            return f"level {i + 2} does not imply level {i + 1}"
        if hi == lo:
            return f"levels {i + 1} and {i + 2} are identical"
        if set(lo.minimals) & set(hi.minimals):
            return f"levels {i + 1} and {i + 2} share minimal elements"
    return None
