"""Fusion-core: value types, the FA-matrix engine and the state-sum oracle."""
