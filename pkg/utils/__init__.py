"""Shared helpers: logging setup for command-line runs"""
