"""Exact workbench for BL-chains, their identities and partial embeddings."""

__version__ = "0.1.0"
