"""
Adaptive differential evolution and the greedy parameter oracle
"""
