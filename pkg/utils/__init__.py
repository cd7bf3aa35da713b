"""
Utility modules for the KLR Algebra Toolkit: run configuration, datum files,
checkpoints, reports and verification suites.
"""
