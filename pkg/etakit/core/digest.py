from pathlib import Path
from typing import Union
import hashlib


def digest_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def digest_file(path: Union[str, Path]) -> str:
    """sha256 of a file's bytes, used to pin report inputs."""
    return digest_bytes(Path(path).read_bytes())


def digest_text(text: str) -> str:
    return digest_bytes(text.encode())
