"""Jumping numbers of multiplier ideals from log-resolution lattice data.

Rationals cross the boundary as ``fractions.Fraction``; divisors as
``{label: coefficient}`` dicts.
"""

from fractions import Fraction

from . import _jnum
from ._jnum import (
    ConsistencyError,
    Error,
    Resolution,
    SchemaError,
    UnknownEffectivity,
    UnknownLabel,
    closure,
    is_antieffective,
    load,
    loads,
    make_example2,
)

__all__ = [
    "ConsistencyError",
    "Error",
    "Resolution",
    "SchemaError",
    "UnknownEffectivity",
    "UnknownLabel",
    "brute_scan",
    "candidates",
    "closure",
    "is_antieffective",
    "jumping_numbers",
    "lct",
    "load",
    "loads",
    "make_example2",
    "supercandidates",
]


def _q(x):
    return str(Fraction(x))


def _fractions(xs):
    return [Fraction(x) for x in xs]


def lct(resolution):
    return Fraction(_jnum.lct(resolution))


def candidates(resolution, bound):
    return _fractions(_jnum.candidates(resolution, _q(bound)))


def brute_scan(resolution, bound):
    return _fractions(_jnum.brute_scan(resolution, _q(bound)))


def supercandidates(resolution, bound, certify=False):
    records = _jnum.supercandidates(resolution, _q(bound), certify)
    for rec in records:
        rec["lambda"] = Fraction(rec["lambda"])
    return records


def jumping_numbers(resolution, bound, window=None):
    """Certified jumping numbers up to ``bound``, extended by periodicity.

    ``window`` defaults to 1 for divisors and min(dim, generators) for ideals.
    """
    if window is None:
        window = _default_window(resolution)
    return _fractions(_jnum.jumping_numbers(resolution, _q(bound), _q(window)))


def _default_window(resolution):
    if resolution.is_ideal:
        return Fraction(_jnum.skoda_threshold(resolution))
    return Fraction(1)
