"""Data models: structures, pairs, extensions, maps and reports."""
