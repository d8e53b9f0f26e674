"""Gate-count-aware exact quantum search: circuits, simulation and counts."""
