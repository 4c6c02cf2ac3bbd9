"""Exact computations in rational group algebras and integral group rings of finite groups."""

__version__ = "0.1.0"
