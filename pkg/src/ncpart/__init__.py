"""Decomposition numbers, m-divisible non-crossing partitions and chain
enumeration in generalised non-crossing partition posets."""

__version__ = "0.1.0"
