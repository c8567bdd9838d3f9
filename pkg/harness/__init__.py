# Пакет прогонов и проверок
