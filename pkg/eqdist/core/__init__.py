"""核心计算引擎"""
