"""Young diagrams, their numberings, and the two Jordan canonical matrices."""

from dataclasses import dataclass
from itertools import groupby

from .linalg import QQ, Matrix


@dataclass(frozen=True)
class Partition:
    """Row lengths of a Young diagram, weakly decreasing and positive.

    Input in any order is accepted and sorted.
    """

    parts: tuple

    def __init__(self, parts=()):
        parts = tuple(int(x) for x in parts)
        if any(x <= 0 for x in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        object.__setattr__(self, "parts", tuple(sorted(parts, reverse=True)))

    @classmethod
    def from_dual(cls, columns):
        return cls(dual_parts(columns))

    @classmethod
    def parse(cls, text):
        """'5,3,1' or '5 3 1' or '(5, 3, 1)'."""
        cleaned = text.strip().strip("()[]T")
        tokens = [t for t in cleaned.replace(",", " ").split() if t]
        return cls(int(t) for t in tokens)

    @property
    def size(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def dual(self):
        return Partition(dual_parts(self.parts))

    def multiplicity_sequence(self):
        return multiplicity_sequence(self)

    def dominates(self, other):
        """Dominance order: every prefix sum of self is >= that of other."""
        if self.size != other.size:
            return False
        a = b = 0
        for k in range(max(len(self), len(other))):
            a += self.parts[k] if k < len(self) else 0
            b += other.parts[k] if k < len(other) else 0
            if a < b:
                return False
        return True

    def boxes(self):
        """Boxes as (row, column) pairs, 0-based, in horizontal order."""
        return [(r, c) for r, n in enumerate(self.parts) for c in range(n)]

    def __str__(self):
        return "T(" + ",".join(str(x) for x in self.parts) + ")"

    def compact(self):
        """Exponent notation such as '5^4 1^4'."""
        return " ".join(f"{v}^{len(list(g))}" for v, g in groupby(self.parts))


def dual_parts(parts):
    parts = sorted((int(x) for x in parts if x), reverse=True)
    if not parts:
        return ()
    return tuple(sum(1 for x in parts if x >= i) for i in range(1, parts[0] + 1))


def dual(t):
    return t.dual()


@dataclass(frozen=True)
class MultiplicitySequence:
    """Distinct part values f_1 > ... > f_s with their multiplicities m_i."""

    pairs: tuple

    @property
    def values(self):
        return tuple(f for f, _ in self.pairs)

    @property
    def multiplicities(self):
        return tuple(m for _, m in self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def expand(self):
        return Partition(f for f, m in self.pairs for _ in range(m))


def multiplicity_sequence(t):
    return MultiplicitySequence(tuple((f, len(list(g))) for f, g in groupby(t.parts)))


def horizontal_numbering(t):
    """(row, col) -> 0-based index, rows first."""
    return {box: i for i, box in enumerate(t.boxes())}


def vertical_numbering(t):
    """(row, col) -> 0-based index, columns first, top to bottom."""
    order = [(r, c) for c, height in enumerate(t.dual().parts) for r in range(height)]
    return {box: i for i, box in enumerate(order)}


@dataclass(frozen=True)
class NumberingPermutation:
    """``pi[i]`` is the vertical index of the box numbered ``i`` horizontally (0-based)."""

    pi: tuple

    def __post_init__(self):
        if sorted(self.pi) != list(range(len(self.pi))):
            raise ValueError("not a permutation")

    def __call__(self, i):
        return self.pi[i]

    def __len__(self):
        return len(self.pi)

    def one_based(self):
        return {i + 1: v + 1 for i, v in enumerate(self.pi)}

    def inverse(self):
        inv = [0] * len(self.pi)
        for i, v in enumerate(self.pi):
            inv[v] = i
        return NumberingPermutation(tuple(inv))


def numbering_permutation(t):
    h = horizontal_numbering(t)
    v = vertical_numbering(t)
    pi = [0] * t.size
    for box, i in h.items():
        pi[i] = v[box]
    return NumberingPermutation(tuple(pi))


def permutation_matrix(perm, field=QQ):
    """P with P[i, pi(i)] = 1."""
    n = len(perm)
    a = field.zeros((n, n))
    for i in range(n):
        a[i, perm(i)] = field.one
    return Matrix(a, field, _trusted=True)


def _numbered_jordan(t, numbering, field):
    n = t.size
    a = field.zeros((n, n))
    for (r, c), i in numbering.items():
        if c + 1 < t.parts[r]:
            a[i, numbering[(r, c + 1)]] = field.one
    return Matrix(a, field, _trusted=True)


def jordan_first(t, field=QQ):
    """Jordan cells of sizes n_1, ..., n_r on the diagonal; ones on the superdiagonal."""
    return _numbered_jordan(t, horizontal_numbering(t), field)


def jordan_second(t, field=QQ):
    """Nilpotent matrix of the vertically numbered diagram.

    Block superdiagonal, block (i, i+1) being an identity of size nu_{i+1}
    stacked over zeros.
    """
    return _numbered_jordan(t, vertical_numbering(t), field)


def partitions_of(n):
    """All partitions of n, in reverse lexicographic order."""
    def gen(rest, largest):
        if rest == 0:
            yield ()
            return
        for k in range(min(rest, largest), 0, -1):
            for tail in gen(rest - k, k):
                yield (k,) + tail

    return [Partition(p) for p in gen(n, n)]


def render_young(t, numbering=None):
    """ASCII diagram; ``numbering`` is None, 'h' or 'v' (1-based labels)."""
    if t.size == 0:
        return ""
    labels = None
    if numbering == "h":
        labels = horizontal_numbering(t)
    elif numbering == "v":
        labels = vertical_numbering(t)
    elif numbering is not None:
        raise ValueError(f"numbering must be 'h' or 'v', not {numbering!r}")
    width = len(str(t.size)) if labels else 1
    lines = []
    for r, n in enumerate(t.parts):
        cells = []
        for c in range(n):
            text = str(labels[(r, c)] + 1) if labels else ""
            cells.append("[" + text.rjust(width) + "]")
        lines.append("".join(cells))
    return "\n".join(lines)
