"""Scenario documents, valid and broken, as JSON text."""

DUOPOLY_TEXT = """{
  "schema": 1,
  "name": "duopoly",
  "source": "s",
  "destination": "w",
  "session_rate": 3.0,
  "links": [
    {"tail": "s", "head": "r1", "cost": {"kind": "linear", "a": 0.0, "b": 0.5}},
    {"tail": "s", "head": "r2", "cost": {"kind": "linear", "a": 0.0, "b": 1.0}},
    {"tail": "r1", "head": "w", "cost": {"kind": "linear", "a": 0.0, "b": 0.5}},
    {"tail": "r2", "head": "w", "cost": {"kind": "linear", "a": 0.0, "b": 1.0}}
  ]
}
"""

# The bad cost kind sits on line 9.
BAD_KIND_TEXT = """{
  "schema": 1,
  "name": "bad-kind",
  "source": "s",
  "destination": "w",
  "session_rate": 1.0,
  "links": [
    {"tail": "s", "head": "r1", "cost": {"kind": "linear", "a": 0.0, "b": 0.5}},
    {"tail": "s", "head": "r2", "cost": {"kind": "cubic", "a": 0.0, "b": 1.0}},
    {"tail": "r1", "head": "w", "cost": {"kind": "linear", "a": 0.0, "b": 0.5}},
    {"tail": "r2", "head": "w", "cost": {"kind": "linear", "a": 0.0, "b": 1.0}}
  ]
}
"""

# The nonpositive rate sits on line 5.
NEGATIVE_RATE_TEXT = """{
  "schema": 1,
  "source": "s",
  "destination": "w",
  "session_rate": -2.0,
  "links": [
    {"tail": "s", "head": "w", "cost": {"kind": "linear", "a": 0.0, "b": 1.0}}
  ]
}
"""

MALFORMED_TEXT = """{
  "schema": 1,
  "source": "s",
  "destination": "w",,
}
"""


def _link(t, h, b):
    return {"tail": t, "head": h, "cost": {"kind": "linear", "a": 0.0, "b": b}}


def oligopoly_document(**extra):
    """Two-relay oligopoly as a dict, with top-level keys replaced by ``extra``."""
    document = {
        "schema": 1,
        "name": "two-relays",
        "source": "s",
        "destination": "w",
        "session_rate": 1.0,
        "links": [
            _link("s", "r1", 0.5),
            _link("s", "r2", 1.0),
            _link("r1", "w", 0.5),
            _link("r2", "w", 1.0),
        ],
    }
    document.update(extra)
    return document
