"""
chiralflow: динамика хирального спинового кольца в немарковской магнонной бане
"""

__version__ = "1.0.0"
