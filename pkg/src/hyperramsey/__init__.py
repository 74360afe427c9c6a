"""Ramsey numbers of r-uniform trees and loose paths versus complete hypergraphs."""

__version__ = "0.1.0"
