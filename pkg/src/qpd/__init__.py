"""Quantum partial derivatives on U(gl(N)_h) and U(u(2)_h)."""
