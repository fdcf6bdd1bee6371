"""
Utility packages for sb-kit.

structures holds the four decision modules and their shared helpers;
certificates holds the job/certificate models and the command-line surface.
"""
