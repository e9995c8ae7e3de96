"""RRE toolkit tests."""
