"""Maximal k-wise intersecting families over [n] = {1..n}.

Sets are integer bitmasks with element i in bit i-1. Families passed to the
checks live in the complement world unless ``world="direct"`` is given.
"""

from ._core import (
    Family,
    FormatError,
    UniverseTooLarge,
    Verdict,
    build_f1,
    build_f2,
    build_family,
    can_cover,
    check_kwise,
    check_saturated,
    complement_family,
    cover_table,
    cube_distance,
    downset_closure,
    enumerate_downsets,
    expected_size,
    format_family,
    greedy_saturate,
    is_downset,
    is_maximal_kwise,
    make_partition,
    make_star,
    maximal_elements,
    oracle_min_size,
    parse_family,
    size_table,
    verify_witness,
)

__all__ = [
    "Family",
    "FormatError",
    "UniverseTooLarge",
    "Verdict",
    "build_f1",
    "build_f2",
    "build_family",
    "can_cover",
    "check_kwise",
    "check_saturated",
    "complement_family",
    "cover_table",
    "cube_distance",
    "downset_closure",
    "enumerate_downsets",
    "expected_size",
    "format_family",
    "greedy_saturate",
    "is_downset",
    "is_maximal_kwise",
    "make_partition",
    "make_star",
    "maximal_elements",
    "oracle_min_size",
    "parse_family",
    "size_table",
    "verify_witness",
]
