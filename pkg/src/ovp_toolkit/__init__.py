"""No-resource machine-translation toolkit for Owens Valley Paiute."""

__version__ = "0.1.0"
