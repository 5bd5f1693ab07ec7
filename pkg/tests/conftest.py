import glob
import os

import pytest

from lieentropy import load_spec

CATALOG_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "catalog")

CATALOG_NAMES = (
    "torus_cat",
    "torus_rotation",
    "torus_diag23",
    "heisenberg_sc",
    "heisenberg_central_quotient",
    "sl2",
    "sl2_semidirect_r2",
    "cat_x_cat_product",
    "cat_x_line",
)


def catalog_path(name: str) -> str:
    return os.path.join(CATALOG_DIR, f"{name}.json")


def all_catalog_paths():
    return sorted(glob.glob(os.path.join(CATALOG_DIR, "*.json")))


@pytest.fixture(scope="session")
def catalog_specs():
    return {name: load_spec(catalog_path(name)) for name in CATALOG_NAMES}
