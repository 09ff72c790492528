"""Tests suite for algebroid-fn."""
