"""Synthetic populations, decile statistics and inequality measures"""
