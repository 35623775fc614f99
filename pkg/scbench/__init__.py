"""
scbench - OFDM / V-OFDM transform algorithms, spectro-computational
throughput models and a runtime benchmark harness.
"""

__version__ = "0.1.0"
