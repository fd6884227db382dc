"""Small builders shared by the test modules."""

from soldeg import PolySystem, parse_system


def mk(text: str) -> PolySystem:
    """Parse a system from file-format text."""
    return parse_system(text).system


def mk_polys(header: str, *exprs: str):
    """Parse polynomials under a shared header, returning them as a list."""
    system = mk(header + "; " + "; ".join(exprs))
    return list(system)
