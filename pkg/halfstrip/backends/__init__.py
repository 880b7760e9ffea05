"""
Writers for verification reports, CSV tables and console summaries.
"""
