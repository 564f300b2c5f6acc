"""JSON Schemas for the CLI run reports, one result schema per command."""

from __future__ import annotations

_INT_LIST = {"type": "array", "items": {"type": "integer"}}
_RATIONAL = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
_POINT = {"type": "array", "items": _RATIONAL}

_CONFIG = {
    "type": "object",
    "required": ["d", "classes"],
    "properties": {
        "d": {"type": "integer", "minimum": 1},
        "classes": {"type": "array", "items": {"type": "array", "items": _POINT}},
    },
}

_PARTS = {
    "type": "array",
    "items": {
        "type": "array",
        "items": {
            "type": "object",
            "required": ["class", "index"],
            "properties": {"class": {"type": "integer"}, "index": {"type": "integer"}},
        },
    },
}

_WITNESS = {
    "type": "object",
    "required": ["point", "barycentrics"],
    "properties": {"point": _POINT, "barycentrics": {"type": "array", "items": _POINT}},
}

_PARTITION = {
    "type": "object",
    "required": ["parts", "witness"],
    "properties": {"parts": _PARTS, "witness": _WITNESS},
}

_CHAIN = {
    "type": "object",
    "required": ["dim", "terms"],
    "properties": {
        "dim": {"type": "integer"},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["simplex", "coeff"],
                "properties": {"simplex": _INT_LIST, "coeff": {"type": "integer"}},
            },
        },
    },
}

_CHECKS = {
    "type": "object",
    "required": ["ok", "checks"],
    "properties": {
        "ok": {"type": "boolean"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "ok", "mismatches"],
                "properties": {"name": {"type": "string"}, "ok": {"type": "boolean"}, "mismatches": {"type": "array"}},
            },
        },
    },
}

_INT_MAP = {"type": "object", "additionalProperties": {"type": "integer"}}

RESULT_SCHEMAS: dict[str, dict] = {
    "chessboard": {
        "type": "object",
        "required": ["r", "n", "dimension", "facets"],
        "properties": {
            "r": {"type": "integer"},
            "n": {"type": "integer"},
            "dimension": {"type": "integer"},
            "facets": {"type": "integer"},
            "f_vector": _INT_LIST,
            "euler_characteristic": {"type": "integer"},
            "betti": _INT_LIST,
            "torsion": {"type": "array", "items": _INT_LIST},
            "pseudomanifold": {
                "type": "object",
                "required": ["pure", "ridge_degree_two", "strongly_connected", "orientable"],
                "additionalProperties": {"type": "boolean"},
            },
        },
    },
    "collapse": {
        "type": "object",
        "required": ["valid", "pairs", "equivariant", "remaining_dimension"],
        "properties": {
            "valid": {"type": "boolean"},
            "pairs": {"type": "integer"},
            "equivariant": {"type": "boolean"},
            "remaining_dimension": {"type": "integer"},
        },
    },
    "cocycle": {
        "type": "object",
        "required": ["d", "r"],
        "properties": {
            "d": {"type": "integer"},
            "r": {"type": "integer"},
            "verdict": {
                "type": "object",
                "required": [
                    "d", "r", "phi_value", "omega_values", "divides",
                    "extension_exists", "facets_evaluated", "nonzero_facets",
                ],
                "properties": {
                    "phi_value": {"type": "integer"},
                    "omega_values": _INT_LIST,
                    "divides": {"type": "boolean"},
                    "extension_exists": {"type": "boolean"},
                    "facets_evaluated": {"type": "integer"},
                    "nonzero_facets": {"type": "integer"},
                    "phi_computed": {"type": "boolean"},
                },
            },
            "chains": {
                "type": "object",
                "required": ["phi", "omega", "theta", "theta2"],
                "properties": {
                    "phi": _CHAIN,
                    "omega": {"type": "object", "additionalProperties": _CHAIN},
                    "theta": {"type": "object", "additionalProperties": _CHAIN},
                    "theta2": {"type": "object", "additionalProperties": _CHAIN},
                },
            },
            "boundaries": _CHECKS,
            "claims": _CHECKS,
            "explicit_h": {
                "type": "object",
                "required": ["ok", "quotient", "h_theta", "h_boundary_phi", "c_phi", "h_boundary_omega", "c_omega"],
                "properties": {
                    "ok": {"type": "boolean"},
                    "quotient": {"type": "integer"},
                    "h_theta": _INT_MAP,
                    "h_theta_diag": _INT_MAP,
                    "h_boundary_phi": {"type": "integer"},
                    "c_phi": {"type": "integer"},
                    "h_boundary_omega": _INT_MAP,
                    "c_omega": _INT_MAP,
                },
            },
            "full": {
                "type": "object",
                "required": ["facets_evaluated", "nonzero_facets", "nonzero_with_last_row_r"],
                "additionalProperties": {"type": "integer"},
            },
        },
    },
    "partition": {
        "oneOf": [
            {
                "type": "object",
                "required": ["found", "parts", "witness"],
                "properties": {"found": {"const": True}, "parts": _PARTS, "witness": _WITNESS},
            },
            {"type": "object", "required": ["found"], "properties": {"found": {"const": False}}, "additionalProperties": False},
            {"type": "object", "required": ["count"], "properties": {"count": {"type": "integer"}}, "additionalProperties": False},
        ]
    },
    "trial": {
        "type": "object",
        "required": ["successes", "failures", "failing_configs"],
        "properties": {
            "successes": {"type": "integer"},
            "failures": {"type": "integer"},
            "failing_configs": {"type": "array", "items": _CONFIG},
        },
    },
    "reduce": {
        "type": "object",
        "required": ["padded", "added_vertices", "found"],
        "properties": {
            "padded": _CONFIG,
            "added_vertices": {"type": "integer"},
            "found": {"type": "boolean"},
            "padded_parts": _PARTS,
            "restricted": {"oneOf": [{"type": "null"}, _PARTITION]},
        },
    },
    "validate": {
        "type": "object",
        "required": ["d", "sizes", "total", "configuration"],
        "properties": {
            "d": {"type": "integer"},
            "sizes": _INT_LIST,
            "total": {"type": "integer"},
            "configuration": _CONFIG,
        },
    },
}


def report_schema(command: str) -> dict:
    """Schema of the full RunReport emitted by ``command``."""
    return {
        "type": "object",
        "required": ["command", "parameters", "result", "elapsed_ms", "exact"],
        "additionalProperties": False,
        "properties": {
            "command": {"const": command},
            "parameters": {"type": "object"},
            "result": RESULT_SCHEMAS[command],
            "elapsed_ms": {"type": "integer", "minimum": 0},
            "exact": {"const": True},
        },
    }
