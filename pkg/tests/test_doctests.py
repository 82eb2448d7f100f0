"""Every docstring example in the package must stay executable."""

import doctest

import pytest

import graphconf.cli
import graphconf.complexes
import graphconf.covers
import graphconf.graphs
import graphconf.homology
import graphconf.pruning
import graphconf.stable
import graphconf.torus

MODULES = (
    graphconf.graphs,
    graphconf.complexes,
    graphconf.homology,
    graphconf.pruning,
    graphconf.covers,
    graphconf.torus,
    graphconf.stable,
    graphconf.cli,
)


@pytest.mark.parametrize("module", MODULES, ids=lambda m: m.__name__)
def test_module_doctests(module):
    failed, attempted = doctest.testmod(module)
    assert attempted > 0
    assert failed == 0
