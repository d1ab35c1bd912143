"""Black hole attacks and next-hop auditing in simulated MANETs."""
try:
    from .version import version as __version__
except ImportError:
    pass
