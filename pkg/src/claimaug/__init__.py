"""Counterfactual text augmentation and sequence-labeling experiment bench."""

__version__ = "0.1.0"
