"""
charsum - Gauss and Jacobi sums over prime power moduli.

This package provides tools for:
- Building the unit group structure of Z/p^m (generators, discrete logs, r and R_j)
- Working with multiplicative characters by their exponent data
- Evaluating Gauss sums G(chi, p^m) in closed form and by brute force
- Evaluating generalised Jacobi sums J_B(chi_1, ..., chi_k, p^m) by several paths
- Cross-checking every path in verification sweeps and benchmarks
"""

__version__ = "0.1.0"
