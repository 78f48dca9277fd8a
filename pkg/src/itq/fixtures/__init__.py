"""Quivers from the worked examples, with the values stated for them."""

import json
from importlib import resources
from typing import Dict, List

from itq.quiver import Quiver, parse_quiver


def names() -> List[str]:
    files = resources.files(__name__)
    return sorted(p.name[: -len(".quiver")] for p in files.iterdir() if p.name.endswith(".quiver"))


def text(name: str) -> str:
    return resources.files(__name__).joinpath(f"{name}.quiver").read_text()


def load(name: str) -> Quiver:
    return parse_quiver(text(name))


def expected() -> Dict[str, dict]:
    return json.loads(resources.files(__name__).joinpath("expected.json").read_text())
