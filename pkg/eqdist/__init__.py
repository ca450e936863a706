"""等距数分析工具 - exact distance powers, equidistant numbers and their eigenvalue bounds"""

__version__ = "1.0.0"
