from .quantity import Quantity, sqrt  # noqa: F401
