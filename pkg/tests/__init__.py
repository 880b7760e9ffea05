"""Tests for halfstrip."""
