"""Unit tests for presentation layer components."""
