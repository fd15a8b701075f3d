"""Command-line front end: single evaluations, verification sweeps and benchmarks."""
