import pytest

from _oracle_recipes import RECIPES, compute
from oracles import FROZEN


def test_every_recipe_is_frozen():
    assert set(RECIPES) == set(FROZEN)


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_frozen_value_matches_mpmath(name):
    assert compute(name) == pytest.approx(FROZEN[name], rel=1e-15, abs=1e-300)
