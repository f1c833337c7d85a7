"""
Hopf Engine
有限维 Hopf 代数、配对、量子偶与部分对偶的精确计算与验证
"""

__version__ = "0.1.0"
__author__ = "Hopf Engine Team"
