"""Exact engine for Daehee, Bernoulli, Euler, and Genocchi polynomial
families, their Apostol deformations, and the combined generalized
Apostol-Bernoulli poly-Daehee family, together with machine verification of
their identities as exact polynomial equalities."""

from . import cli, coeffring, families, identities, series
from .coeffring import (ETA, GAMMA, OMEGA, MultiPoly, Rational, Symbol, binom,
                        falling_factorial, rat, rat_from_str, rat_str)
from .families import (FAMILY_NAMES, FamilyParams, FamilySpec, FamilyTable,
                       family_build, family_catalog, family_member_eval,
                       family_spec)
from .identities import (IdentityReport, SuiteGrid, default_grid,
                         render_report, run_suite, suite_passed)
from .series import (AtomKind, AtomSpec, EngineError, ParameterError, Series,
                     atom_build, extract_sequence, series_compose, series_div,
                     series_make, series_mul, series_pow)

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop all memoized atoms and family tables."""
    series.clear_series_caches()
    families.clear_table_cache()
