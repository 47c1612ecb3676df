"""Exact machinery for root data, relative Weyl combinatorics, Kottwitz-set
invariants, representations of disconnected reductive groups, packet-label
construction, and formal verification of the regular endoscopic character
identity."""

__version__ = "0.1.0"
