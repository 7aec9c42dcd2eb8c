"""Exact cellular bases of Brauer and symmetric group diagram algebras,
their actions on symplectic/orthogonal tensor space, and integral
kernel/image certificates for those actions."""

__version__ = "0.1.0"
