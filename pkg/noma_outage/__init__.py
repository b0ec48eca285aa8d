"""Outage, diversity and throughput analysis of unified CD/PD-NOMA downlinks."""

__version__ = "1.0.0"
