"""Tests for the varbv package."""
