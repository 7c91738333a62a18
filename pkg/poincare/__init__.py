from .config import EngineOptions
from .exceptions import PoincareError

__all__ = ["EngineOptions", "PoincareError"]
