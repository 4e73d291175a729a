"""Generalized inverses of complex square matrices, and seeded checks of their additive and product properties."""
