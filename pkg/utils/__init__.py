# Пакет утилит
