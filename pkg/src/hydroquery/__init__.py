"""Natural-language querying of water distribution network simulations.

Retrieval-augmented code generation: toolkit documentation is embedded into
a vector index; a user query retrieves the closest method docs, an LLM
generates a function plus a one-line evaluation, the code runs in a
sandboxed subprocess, and tracebacks drive a bounded repair loop.
"""

__version__ = "0.1.0"
