"""Multiplicities in N ∪ {ω}, ω standing for a countably infinite count."""


class _Omega:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "OMEGA"

    def __str__(self):
        return "ω"

    def __reduce__(self):
        return (_Omega, ())


OMEGA = _Omega()


def is_omega(m):
    return m is OMEGA


def check_mult(m):
    if m is OMEGA:
        return m
    if isinstance(m, bool) or not isinstance(m, int) or m < 0:
        raise ValueError(f"multiplicity must be a nonnegative int or OMEGA, got {m!r}")
    return m


def add_mult(a, b):
    if a is OMEGA or b is OMEGA:
        return OMEGA
    return a + b


def mul_mult(a, b):
    """Product of two multiplicities; 0 annihilates ω."""
    if a == 0 or b == 0:
        return 0
    if a is OMEGA or b is OMEGA:
        return OMEGA
    return a * b


def mult_to_json(m):
    return "omega" if m is OMEGA else m


def mult_from_json(v):
    if v == "omega":
        return OMEGA
    return check_mult(v)


def mult_prefix(m):
    """'' for 1, otherwise 'k·' (or 'ω·')."""
    if m == 1:
        return ""
    return f"{m}·"
