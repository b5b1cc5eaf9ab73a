"""Bundled corpus assets (see tools/build_corpus.py)."""
