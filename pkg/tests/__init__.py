"""
Test suite for Cornered Floer Server
"""
