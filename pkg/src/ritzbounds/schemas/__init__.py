"""Published JSON Schemas for the check and campaign reports."""

import json
from importlib import resources

NAMES = ("bound_report", "check_output", "campaign_report")


def load(name: str) -> dict:
    return json.loads(resources.files(__name__).joinpath(f"{name}.schema.json").read_text())
