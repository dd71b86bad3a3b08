"""Reference R-matrices typed in by hand, stored as text entries."""

import json
from importlib import resources

GOLDEN = {"R_q": "eq17_R_q.json", "R_q1": "eq21_R_q1.json", "R_q2": "eq21_R_q2.json",
          "R_h": "eq27_R_h.json"}


def golden_rows(name):
    text = resources.files(__name__).joinpath(GOLDEN[name]).read_text(encoding="utf-8")
    return json.loads(text)["rows"]


def load_golden(name):
    from ..presets import scalar_h_system
    from ..supermatrix import SuperMatrix

    return SuperMatrix.parse(golden_rows(name), scalar_h_system().alphabet)
