"""speclat - Finite specialization semilattices and their free principal extensions."""

__version__ = "1.0.0"
