"""Decile data ingestion: parsing, validation and CPI deflation"""
