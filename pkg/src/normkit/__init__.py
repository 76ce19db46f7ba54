"""normkit: synthetic date/address corpora, OCR-style noise, a rule-based
normalizer, and an exact-match evaluation harness."""

__version__ = "0.1.0"
