"""Test suite for Postal DNSBL Monitor."""
