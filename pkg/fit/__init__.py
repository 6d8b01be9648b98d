"""Polynomial fitting of complementary cumulative distributions"""
