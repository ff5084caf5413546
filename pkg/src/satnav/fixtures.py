"""Built-in example networks, so every regression runs without input files.

Names:
  triangle  A-B-C triangle, AB=BC=1, AC=3, home C
  spike     circle-with-spike: parallel arcs A-X of lengths 1 and 2, X-H=1
  tree      five-node tree 2-A-B-H with leaf 1 on B, unit arcs
  line5     unit line 0..5, home 5
  line7     unit line 0..7, home 7
  c3        unit 3-cycle, home H
  c4        unit 4-cycle A-C-B-H, home H (C antipodal to home)
"""

from __future__ import annotations

from .errors import ValidationError
from .network import Network, build_network


def triangle(x: float = 3.0) -> Network:
    return build_network("C", [("AB", "A", "B", 1), ("BC", "B", "C", 1),
                               ("AC", "A", "C", x)])


def spike() -> Network:
    return build_network("H", [("AX1", "A", "X", 1), ("AX2", "A", "X", 2),
                               ("XH", "X", "H", 1)])


def tree() -> Network:
    return build_network("H", [("2A", "2", "A", 1), ("AB", "A", "B", 1),
                               ("1B", "1", "B", 1), ("BH", "B", "H", 1)])


def line(n: int) -> Network:
    """Unit line on nodes 0..n with home at node n."""
    return build_network(
        str(n), [(f"a{i}", str(i), str(i + 1), 1) for i in range(n)]
    )


def cycle(n: int) -> Network:
    """Unit cycle; home H, remaining nodes A, B adjacent to H, then C, ..."""
    if n == 3:
        return build_network("H", [("AB", "A", "B", 1), ("AH", "A", "H", 1),
                                   ("BH", "B", "H", 1)])
    if n == 4:
        return build_network("H", [("HA", "H", "A", 1), ("AC", "A", "C", 1),
                                   ("CB", "C", "B", 1), ("BH", "B", "H", 1)])
    raise ValidationError(f"no built-in cycle of size {n}")


FIXTURES = {
    "triangle": triangle,
    "spike": spike,
    "tree": tree,
    "line5": lambda: line(5),
    "line7": lambda: line(7),
    "c3": lambda: cycle(3),
    "c4": lambda: cycle(4),
}


def fixture(name: str) -> Network:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise ValidationError(
            f"unknown fixture {name!r}; available: {', '.join(sorted(FIXTURES))}"
        ) from None
