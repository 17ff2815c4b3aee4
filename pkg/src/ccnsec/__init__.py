"""Secret multicast over combination networks with feedback: build linear
protocols as traces over GF(p) and check decodability, perfect secrecy and rate."""

__version__ = "0.1.0"
