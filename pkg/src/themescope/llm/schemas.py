"""Named output schemas for structured completions.

Each entry is either a JSON-schema payload (``kind: json``) or a plain-text
parser (``kind: comma_list``). Schema names are stable strings so they can
participate in cache keys.
"""

from __future__ import annotations

import json

import jsonschema

from themescope.errors import ArgumentError

_LIKERT = {"type": "integer", "minimum": 1, "maximum": 5}

SCHEMAS: dict[str, dict] = {
    "relevance_label": {
        "kind": "json",
        "schema": {
            "type": "object",
            "properties": {
                "population_relevance": _LIKERT,
                "population_reason": {"type": "string", "minLength": 1},
                "content_relevance": _LIKERT,
                "content_reason": {"type": "string", "minLength": 1},
            },
            "required": [
                "population_relevance",
                "population_reason",
                "content_relevance",
                "content_reason",
            ],
        },
    },
    # the extraction prompt allows a bare null when nothing relevant is found
    "quote_entries": {
        "kind": "json",
        "schema": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "properties": {
                        "entries": {
                            "oneOf": [
                                {"type": "null"},
                                {
                                    "type": "array",
                                    "items": {
                                        "type": "object",
                                        "properties": {
                                            "quote": {"type": "string", "minLength": 1},
                                            "summary": {"type": "string"},
                                        },
                                        "required": ["quote", "summary"],
                                    },
                                },
                            ]
                        }
                    },
                    "required": ["entries"],
                },
            ]
        },
    },
    "theme_codes": {
        "kind": "json",
        "schema": {
            "type": "object",
            "properties": {
                "codes": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "properties": {
                            "name": {"type": "string", "minLength": 1},
                            "description": {"type": "string"},
                        },
                        "required": ["name", "description"],
                    },
                }
            },
            "required": ["codes"],
        },
    },
    "merged_themes": {
        "kind": "json",
        "schema": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "theme_title": {"type": "string", "minLength": 1},
                    "theme_description": {"type": "string"},
                    "sub_theme_ids": {"type": "array", "items": {"type": "integer"}},
                },
                "required": ["theme_title", "theme_description", "sub_theme_ids"],
            },
        },
    },
    "categorized_quotes": {
        "kind": "json",
        "schema": {
            "type": "object",
            "properties": {
                "categorized_quotes": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "properties": {
                            "quote": {"type": "string"},
                            "source_id": {"type": "string"},
                            "codes": {
                                "type": "array",
                                "minItems": 1,
                                "maxItems": 1,
                                "items": {
                                    "type": "object",
                                    "properties": {
                                        "code": {"type": "integer"},
                                        "code_name": {"type": "string"},
                                    },
                                    "required": ["code"],
                                },
                            },
                        },
                        "required": ["source_id", "codes"],
                    },
                }
            },
            "required": ["categorized_quotes"],
        },
    },
    "suggested_themes": {
        "kind": "json",
        "schema": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "title": {"type": "string", "minLength": 1},
                    "description": {"type": "string"},
                },
                "required": ["title", "description"],
            },
        },
    },
    "keep_decision": {
        "kind": "json",
        "schema": {
            "type": "object",
            "properties": {"keep": {"type": "boolean"}, "summary": {"type": "string"}},
            "required": ["keep", "summary"],
        },
    },
    "match_suggestion": {
        "kind": "json",
        "schema": {
            "type": "object",
            "properties": {
                "match": {"type": ["string", "null"]},
                "note": {"type": "string"},
            },
            "required": ["match", "note"],
        },
    },
    "comma_list": {"kind": "comma_list"},
}


def _strip_code_fence(text: str) -> str:
    stripped = text.strip()
    if stripped.startswith("```"):
        stripped = stripped.split("\n", 1)[1] if "\n" in stripped else ""
        if stripped.rstrip().endswith("```"):
            stripped = stripped.rstrip()[: -len("```")]
    return stripped.strip()


def parse_and_validate(schema_name: str, raw_text: str):
    """Parse raw model text under the named schema; raises ValueError on any violation."""
    spec = SCHEMAS.get(schema_name)
    if spec is None:
        raise ArgumentError(f"unknown output schema: {schema_name}")

    if spec["kind"] == "comma_list":
        text = raw_text.strip()
        if not text:
            return []
        return [part.strip() for part in text.split(",") if part.strip()]

    cleaned = _strip_code_fence(raw_text)
    if cleaned.lower() == "null":
        cleaned = "null"
    try:
        value = json.loads(cleaned)
    except json.JSONDecodeError as exc:
        raise ValueError(f"response is not valid JSON: {exc}") from exc
    try:
        jsonschema.validate(value, spec["schema"])
    except jsonschema.ValidationError as exc:
        raise ValueError(f"response violates the expected schema: {exc.message}") from exc
    return value
