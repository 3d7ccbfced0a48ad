"""Reductions from (k-)Most-Orthogonal-Vectors to sequence similarity problems."""
