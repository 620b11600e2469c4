"""
Сервисы ядра: численные операции модели и оркестрация запусков
"""
