"""econprove: automated reasoning for economic theory via quantifier elimination."""

__version__ = "0.1.0"
