"""Words in the extended Weyl group generators w~_i.

The extended Weyl group is never given an abstract normal form here: words
act on the root lattice through the underlying simple reflections, and the
finer identities (w~^4 = 1 etc.) are checked in the faithful matrix model by
the verifier module.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cartan import GeneralizedCartanMatrix
from .roots import Root, simple_reflection


@dataclass(frozen=True)
class ExtWeylWord:
    """Freely reduced word; letters are (node, exponent) with exponent +-1."""

    letters: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", _free_reduce(self.letters))

    def __mul__(self, other: "ExtWeylWord") -> "ExtWeylWord":
        return ExtWeylWord(self.letters + other.letters)

    def inverse(self) -> "ExtWeylWord":
        return ExtWeylWord(tuple((i, -e) for i, e in reversed(self.letters)))

    def __pow__(self, n: int) -> "ExtWeylWord":
        if n < 0:
            return self.inverse() ** (-n)
        out = ExtWeylWord(())
        for _ in range(n):
            out = out * self
        return out

    def __len__(self) -> int:
        return len(self.letters)

    def to_json(self) -> list[int]:
        """Signed 1-based node indices, sign = exponent."""
        return [e * (i + 1) for i, e in self.letters]


def _free_reduce(letters) -> tuple[tuple[int, int], ...]:
    out: list[tuple[int, int]] = []
    for i, e in letters:
        if e not in (1, -1):
            raise ValueError(f"exponent must be +-1, got {e}")
        if out and out[-1][0] == i and out[-1][1] == -e:
            out.pop()
        else:
            out.append((i, e))
    return tuple(out)


def w(i: int, exponent: int = 1) -> ExtWeylWord:
    return ExtWeylWord(((i, exponent),))


def act_on_root_lattice(
    gcm: GeneralizedCartanMatrix, word: ExtWeylWord, root: Root
) -> Root:
    """Apply the word's simple reflections left-to-right per letter.

    The exponent is irrelevant on the lattice: reflections are involutions.
    """
    v = root
    for i, _e in word.letters:
        v = simple_reflection(gcm, i, v)
    return v


def kp_relation_schemas(
    gcm: GeneralizedCartanMatrix,
) -> list[tuple[str, tuple[int, ...], ExtWeylWord, ExtWeylWord]]:
    """Extended-Weyl relation instances to be checked in the matrix model.

    Emits (name, nodes, lhs, rhs) for:
      order4        w_i^4 = 1                      every node
      commute       w_i w_j = w_j w_i              non-adjacent pairs
      braid         w_i w_j w_i = w_j w_i w_j      adjacent pairs
      square_conj   w_j w_i^2 w_j^-1 = w_i^2 w_j^2 adjacent pairs (a_ij = -1)
    """
    eps = ExtWeylWord(())
    out = []
    n = gcm.rank
    for i in range(n):
        out.append(("order4", (i,), w(i) ** 4, eps))
    for i in range(n):
        for j in range(i + 1, n):
            if not gcm.adjacent(i, j):
                out.append(("commute", (i, j), w(i) * w(j), w(j) * w(i)))
    for i in range(n):
        for j in range(n):
            if i != j and gcm.adjacent(i, j):
                out.append(("braid", (i, j), w(i) * w(j) * w(i), w(j) * w(i) * w(j)))
                out.append(
                    (
                        "square_conj",
                        (i, j),
                        w(j) * w(i) * w(i) * w(j, -1),
                        w(i) * w(i) * w(j) * w(j),
                    )
                )
    return out
