"""Exact computations for the cohomological Hall algebra of Higgs sheaves on a curve."""
