"""Shared fixtures: the expensive models are built once per session."""

import pytest

from graphconf.covers import letter, star_model


@pytest.fixture(scope="session")
def letter_models3():
    """Pruned three-point models of the four letters (default subdivision)."""
    return {name: star_model(letter(name), 3) for name in "XYZO"}


@pytest.fixture(scope="session")
def y_model3(letter_models3):
    return letter_models3["Y"]


@pytest.fixture(scope="session")
def interval_model2():
    """Pruned two-point model of a segment (default subdivision)."""
    return star_model(letter("Z"), 2)
