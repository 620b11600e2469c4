"""
Тесты chiralflow
"""
