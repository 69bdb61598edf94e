from dataclasses import replace

import pytest

from tquot import gallery


@pytest.fixture(scope="session")
def gallery_specs():
    """One built spec per catalog entry, default genus for the families."""
    return {name: gallery.build(name) for name in gallery.names()}


def component_at(spec, moment):
    """Index of the unique component whose moment equals the given ints."""
    hits = [
        i
        for i, c in enumerate(spec.components)
        if tuple(map(int, c.moment)) == tuple(moment) and all(x.denominator == 1 for x in c.moment)
    ]
    assert len(hits) == 1
    return hits[0]


def with_component(spec, index, comp):
    comps = spec.components[:index] + (comp,) + spec.components[index + 1 :]
    return replace(spec, components=comps)


def without_component(spec, index):
    comps = spec.components[:index] + spec.components[index + 1 :]
    return replace(spec, components=comps)
