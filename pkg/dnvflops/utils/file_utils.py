"""
File utility functions for state documents and reports
"""
import json
import os
from typing import Any, Dict, Optional


class FileManager:
    """File management utilities"""

    @staticmethod
    def ensure_directory(path: str) -> bool:
        """Ensure directory exists, create if necessary"""
        if not path:
            return True
        try:
            os.makedirs(path, exist_ok=True)
            return True
        except OSError:
            return False

    @staticmethod
    def read_json(file_path: str) -> Dict[str, Any]:
        """Read a JSON document; raises FileNotFoundError or ValueError"""
        if not os.path.exists(file_path):
            raise FileNotFoundError(f"File not found: {file_path}")

        with open(file_path, 'r', encoding='utf-8') as f:
            return json.load(f)

    @staticmethod
    def write_json(data: Any, file_path: str) -> bool:
        """Write a JSON document with sorted keys so output is reproducible"""
        try:
            FileManager.ensure_directory(os.path.dirname(file_path))
            with open(file_path, 'w', encoding='utf-8') as f:
                json.dump(data, f, indent=2, sort_keys=True, ensure_ascii=False)
                f.write("\n")
            return True
        except OSError:
            return False

    @staticmethod
    def write_text(text: str, file_path: str) -> bool:
        try:
            FileManager.ensure_directory(os.path.dirname(file_path))
            with open(file_path, 'w', encoding='utf-8') as f:
                f.write(text)
            return True
        except OSError:
            return False

    @staticmethod
    def get_file_extension(file_path: str) -> str:
        """Get file extension without the dot"""
        return os.path.splitext(file_path)[1][1:].lower()

    @staticmethod
    def format_for_path(file_path: Optional[str], default: str = "json") -> str:
        """Guess an output format from a file name"""
        if not file_path:
            return default
        extension = FileManager.get_file_extension(file_path)
        return extension if extension in ("json", "csv", "dot") else default
