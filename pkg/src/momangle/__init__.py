__version__ = "0.1.0"
__description__ = (
    "Exact integral cohomology of moment-angle complexes and certification of Poincaré, Alexander "
    "and Gorenstein duality"
)
