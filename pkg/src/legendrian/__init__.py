"""Exact computations for Legendrian varieties and cubic forms."""
