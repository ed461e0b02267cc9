"""Numerically checkable harmonic analysis on rank-one parabolic groups.

Submodules: `algebra` (R, C, H, O arithmetic), `heisenberg` (the twisted
products F^{n-1} x Im F), `parabolic` (the 3x3 matrix group, MA |x N,
Haar data), `orbits` (dual actions, classification, stabilizers,
witnesses), `reps` (characters, the phase-space model, induced sections,
regular coefficients), `verdicts` (Plancherel geometry and the decision
table), `selftest` (the acceptance suite), `cli` (the command line).
"""

__version__ = "0.1.0"
