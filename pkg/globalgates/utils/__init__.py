"""Utility modules for globalgates."""
