"""Geometric handover performance analysis for macro/pico HetNets."""

__version__ = "0.1.0"
