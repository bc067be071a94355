"""JSON Schemas (draft 2020-12) for the reports ``trace-pi --format json`` writes."""

_NULLABLE_INT = {"type": ["integer", "null"]}

CODIM_ROW = {
    "type": "object",
    "required": ["algebra", "n", "codim", "closed_form", "match", "mode", "elapsed_ms"],
    "additionalProperties": False,
    "properties": {
        "algebra": {"type": "string"},
        "n": {"type": "integer", "minimum": 1},
        "codim": {"type": "integer", "minimum": 0},
        "closed_form": _NULLABLE_INT,
        "match": {"type": ["boolean", "null"]},
        "mode": {"enum": ["general", "commutative"]},
        "elapsed_ms": _NULLABLE_INT,
    },
}

DEGREE_ROW = {
    "type": "object",
    "required": ["n", "dim_consequences", "dim_identities", "sound", "complete"],
    "additionalProperties": False,
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "dim_consequences": {"type": "integer", "minimum": 0},
        "dim_identities": {"type": "integer", "minimum": 0},
        "sound": {"type": "boolean"},
        "complete": {"type": "boolean"},
    },
}


def _report(command: str, properties: dict, required: list[str]) -> dict:
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "type": "object",
        "required": ["command", "verdict", *required],
        "properties": {"command": {"const": command}, "verdict": {"type": "string"},
                       "title": {"type": "string"},
                       "notes": {"type": "array", "items": {"type": "string"}}, **properties},
        "additionalProperties": False,
    }


SCHEMAS = {
    "codim": _report(
        "codim",
        {"algebra": {"type": "string"}, "rows": {"type": "array", "items": CODIM_ROW}},
        ["algebra", "rows"],
    ),
    "check": _report(
        "check",
        {
            "algebra": {"type": "string"},
            "polynomial": {"type": "string"},
            "identity": {"type": "boolean"},
            "witness": {"type": ["array", "null"], "items": {"type": "string"}},
        },
        ["algebra", "polynomial", "identity", "witness"],
    ),
    "verify": _report(
        "verify",
        {
            "algebra": {"type": "string"},
            "generators": {"type": "string"},
            "max_n": {"type": "integer"},
            "mode": {"enum": ["general", "commutative"]},
            "ok": {"type": "boolean"},
            "first_failure": _NULLABLE_INT,
            "unsound_witness": {"type": ["string", "null"]},
            "rows": {"type": "array", "items": DEGREE_ROW},
        },
        ["algebra", "generators", "max_n", "ok", "first_failure", "rows"],
    ),
    "basis": _report(
        "basis",
        {
            "algebra": {"type": "string"},
            "family": {"type": "string"},
            "n": {"type": "integer"},
            "size": {"type": "integer"},
            "codim": {"type": "integer"},
            "rank": {"type": "integer"},
            "ok": {"type": "boolean"},
            "monomials": {"type": ["array", "null"], "items": {"type": "string"}},
        },
        ["algebra", "family", "n", "size", "codim", "rank", "ok"],
    ),
    "compare": _report(
        "compare",
        {
            "a": {"type": "string"},
            "b": {"type": "string"},
            "mode": {"enum": ["equal", "contains"]},
            "rows": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["n", "holds"],
                    "additionalProperties": False,
                    "properties": {"n": {"type": "integer"}, "holds": {"type": "boolean"}},
                },
            },
        },
        ["a", "b", "mode", "rows"],
    ),
    "count": _report(
        "count",
        {
            "rows": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["n", "k", "count", "stirling"],
                    "additionalProperties": False,
                    "properties": {k: {"type": "integer"} for k in ("n", "k", "count", "stirling")},
                },
            }
        },
        ["rows"],
    ),
    "paper-suite": _report(
        "paper-suite",
        {
            "passed": {"type": "integer"},
            "total": {"type": "integer"},
            "rows": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["id", "title", "passed", "details", "elapsed_ms"],
                    "additionalProperties": False,
                    "properties": {
                        "id": {"type": "integer"},
                        "title": {"type": "string"},
                        "passed": {"type": "boolean"},
                        "details": {"type": "array", "items": {"type": "string"}},
                        "elapsed_ms": _NULLABLE_INT,
                    },
                },
            },
        },
        ["passed", "total", "rows"],
    ),
}

ALGEBRA_FILE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["dim", "unit", "trace", "mul"],
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "unit": {"type": "array"},
        "trace": {"type": "array"},
        "mul": {"type": "array"},
        "labels": {"type": "array", "items": {"type": "string"}},
        "name": {"type": "string"},
    },
}
