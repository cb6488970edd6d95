"""Edge-reflexivity of cubic graphs via 3-colouring complexes."""

__version__ = "0.1.0"
