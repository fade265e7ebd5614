"""Sparse associative arrays keyed by sorted strings and numbers."""

from ._core import (
    Assoc,
    Key,
    array_product,
    check_axioms,
    combine,
    elementwise_max,
    elementwise_min,
    generate_bench,
    read_triples,
    run_benchmarks,
    sorted_intersection,
    sorted_union,
    write_triples,
)

__all__ = [
    "Assoc",
    "Key",
    "array_product",
    "check_axioms",
    "combine",
    "elementwise_max",
    "elementwise_min",
    "generate_bench",
    "read_triples",
    "run_benchmarks",
    "sorted_intersection",
    "sorted_union",
    "write_triples",
]

__version__ = "0.1.0"
