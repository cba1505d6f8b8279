"""Locating paired-dominating sets in the king grid."""

from ._lpds import (
    Pattern,
    Window,
    adjacent_sum,
    canonicalize,
    catalog,
    check_all,
    check_lemma1,
    check_r_claims,
    density,
    discharge,
    parse,
    render_ascii,
    search,
    verify,
    verify_window,
    window_density,
)

__all__ = [
    "Pattern",
    "Window",
    "adjacent_sum",
    "canonicalize",
    "catalog",
    "check_all",
    "check_lemma1",
    "check_r_claims",
    "density",
    "discharge",
    "parse",
    "render_ascii",
    "search",
    "verify",
    "verify_window",
    "window_density",
]
