"""Implicitization of rational plane curves and space surfaces."""
