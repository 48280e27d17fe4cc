"""Verification of two-torsion generation of the extended mapping class group."""
