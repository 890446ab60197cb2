"""Exact computations for the stable cohomology of GL_n over finite fields and its completions."""

__version__ = "0.1.0"
