import json
import os
from typing import Any


class OutputStorage:
    """Singleton класс для чтения входных файлов и атомарной записи результатов"""

    _instance = None

    def __new__(cls):
        """Реализация паттерна Singleton"""
        if cls._instance is None:
            cls._instance = super(OutputStorage, cls).__new__(cls)
        return cls._instance

    def read_text(self, file_path: str) -> str:
        """Читает текстовый файл в UTF-8"""
        with open(file_path, 'r', encoding='utf-8') as f:
            return f.read()

    def write_text(self, file_path: str, text: str) -> None:
        """Сохраняет текст атомарно через временный файл"""
        directory = os.path.dirname(file_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        temp_path = f"{file_path}.tmp"
        try:
            with open(temp_path, 'w', encoding='utf-8', newline='\n') as f:
                f.write(text)
            os.replace(temp_path, file_path)
        except (IOError, OSError) as e:
            raise IOError(f"Failed to save {file_path}: {str(e)}")


def to_json(data: Any) -> str:
    """Сериализует данные в JSON с фиксированным форматированием"""
    return json.dumps(data, indent=2, ensure_ascii=False)
