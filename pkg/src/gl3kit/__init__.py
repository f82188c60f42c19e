"""Tools for minimal K-types and Whittaker functions on GL(3)."""
