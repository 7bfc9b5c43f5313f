"""MUB circuit construction, statistics and export."""
