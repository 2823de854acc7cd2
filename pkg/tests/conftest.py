import json
import os

import pytest

from chainlab import io as cio

CORPUS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
                      "corpus")


def corpus_path(name: str) -> str:
    return os.path.join(CORPUS, name)


@pytest.fixture(scope="session")
def manifest():
    with open(corpus_path("manifest.json")) as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def corpus_complexes(manifest):
    return {name: cio.load_complex(corpus_path(name))
            for name in manifest["complexes"]}


@pytest.fixture(scope="session")
def corpus_maps(manifest):
    return {name: cio.load_chain_map(corpus_path(name))
            for name in manifest["maps"]}


@pytest.fixture(scope="session")
def corpus_groups(manifest):
    return {name: cio.load_group(corpus_path(name))
            for name in manifest["groups"]}


@pytest.fixture(scope="session")
def corpus_modules(manifest, corpus_groups):
    return {e["file"]: cio.load_module(corpus_path(e["file"]),
                                       corpus_groups[e["group"]])
            for e in manifest["modules"]}


@pytest.fixture(scope="session")
def corpus_triangulations(manifest):
    return {name: cio.load_simplicial(corpus_path(name))
            for name in manifest["triangulations"] + manifest["nonorientable"]}
