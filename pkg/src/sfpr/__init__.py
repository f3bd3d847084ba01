"""Square-full primitive roots modulo primes.

Counting by exact character-sum decomposition, least-element searches,
analytic main-term constants, empirical error profiling, and deterministic
parallel scans.
"""

__version__ = "0.1.0"
