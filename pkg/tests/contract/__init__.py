"""Contract tests package for constitutional compliance."""
