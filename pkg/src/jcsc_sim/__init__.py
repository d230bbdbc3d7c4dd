"""Slotted-time simulator for joint communication and sensing machine networks."""

__version__ = "0.1.0"
