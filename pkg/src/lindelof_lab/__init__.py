"""Chi-factor, zeta and Lindelof mu-function numerics with a bound-verification harness."""

__version__ = "0.1.0"
