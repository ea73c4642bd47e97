"""
rcch — exact tooling for real-Clifford+CH circuits.

Circuits evaluate to orthogonal matrices over Z[1/√2]; matrices synthesize into
one/two-level generator words; Gray-code codecs translate between the two, and
the equation catalogs are checked for soundness by exact comparison.
"""

__version__ = "0.1.0"
