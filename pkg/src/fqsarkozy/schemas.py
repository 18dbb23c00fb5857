"""JSON Schemas (draft 2020-12) for the CLI reports, keyed by subcommand.

Tabular subcommands (``table``, ``compare``) are described per row; their
JSON form is an array of such rows.
"""

from __future__ import annotations

_INT = {"type": "integer"}
_NUM = {"type": "number"}
_BOOL = {"type": "boolean"}
_STR = {"type": "string"}
_INTS = {"type": "array", "items": _INT}


def _obj(props: dict, required=None, extra: bool = True) -> dict:
    return {
        "type": "object",
        "properties": props,
        "required": sorted(props) if required is None else required,
        "additionalProperties": extra,
    }


FIELD = _obj({"p": _INT, "e": _INT, "modulus": _INTS}, extra=False)

TERMS = {"type": "array", "items": _obj({"exps": _INTS, "coeff": _INT}, extra=False)}

BOUND = _obj(
    {
        "q": _INT,
        "k": _INT,
        "d_mode": {"enum": ["paper", "exact"]},
        "d": _NUM,
        "s": _NUM,
        "x_star": _NUM,
        "t": _NUM,
        "c": _NUM,
        "attained": _BOOL,
        "grid_x": _NUM,
        "witnesses": {"type": "object", "additionalProperties": _NUM},
        "n": _INT,
        "bound": _NUM,
        "witness": _NUM,
    },
    required=["q", "k", "d_mode", "d", "s", "x_star", "t", "c", "attained"],
)

TABLE_ROW = _obj({"q": _INT, "k": _INT, "d_paper": _NUM, "d_exact": _INT, "x_star": _NUM, "t": _NUM, "c": _NUM})

PHI = _obj(
    {
        "m": _INT,
        "phis": {"type": "array", "items": TERMS},
        "preimage_zero": {"type": "array", "items": _INTS},
        "max_deg_phi": _INT,
    }
)

MU = _obj({"mu": TERMS, "degree": _INT, "target_set": {"type": "array", "items": _INTS}, "witness_sum": _INT})

CONSTRUCT = _obj(
    {
        "mu": MU,
        "P": TERMS,
        "degP": _INT,
        "bound": _STR,
        "d": _STR,
        "support_mode": {"enum": ["exhaustive", "sampled"]},
        "checks": _obj({"p0_nonzero": _BOOL, "support": _BOOL, "degree": _BOOL}),
    }
)

CERTIFY = _obj({"rank": _INT, "T": _INT, "bound": _INT, "diagonal": _BOOL, "pass": _BOOL, "points": _INT})

SEARCH = _obj(
    {
        "alpha": _INT,
        "witness": _INTS,
        "nodes_explored": _INT,
        "elapsed": _NUM,
        "setting": {"enum": ["poly_ring", "field"]},
        "ambient_size": _INT,
    },
    required=["alpha", "witness", "nodes_explored", "setting", "ambient_size"],
)

COMPARE_ROW = _obj({"q": _INT, "k": _INT, "n": _INT, "alpha": _INT, "bound": _NUM, "ratio": _NUM})

_BOUND_WITH_VALUE = {**BOUND, "required": BOUND["required"] + ["value", "witness"]}
_BOUND_WITH_VALUE["properties"] = {**BOUND["properties"], "value": _NUM}

TRANSCRIPT = _obj(
    {
        "schema_version": {"const": 1},
        "inputs": _obj({"field": FIELD, "q": _INT, "F": _STR, "k": _INT, "n": _INT, "A": _INTS}),
        "m": _INT,
        "d_exact": _INT,
        "d_paper": _NUM,
        "mu": _obj({"degree": _INT, "witness_sum": _INT, "target_set": {"type": "array", "items": _INTS}}),
        "P": _obj({"degP": _INT, "bound": _STR, "support_mode": _STR, "terms": _INT, "p0": _INT}),
        "identity": {
            "oneOf": [
                {"type": "null"},
                _obj({"passed": _BOOL, "checked": _INT, "counterexample": {"type": ["array", "null"]}}),
            ]
        },
        "audit": _obj({"d": _INT, "passed": _BOOL, "degP": _INT, "bound": _STR}, required=["d", "passed"]),
        "certificate": CERTIFY,
        "bounds": _obj({"exact": _BOUND_WITH_VALUE, "paper": _BOUND_WITH_VALUE, "degree_count_cap": _INT}),
        "search": {"oneOf": [{"type": "null"}, _obj({"alpha": _INT, "witness": _INTS, "nodes_explored": _INT})]},
        "verdicts": {"type": "object", "additionalProperties": {"const": True}},
        "final": _obj({"size": _INT, "rank": _INT, "2T": _INT, "holds": {"const": True}}),
    }
)

SWEEP = _obj(
    {
        "schema_version": {"const": 1},
        "transcripts": {"type": "array", "items": TRANSCRIPT},
        "errors": {
            "type": "array",
            "items": _obj({"q": _INT, "F": _STR, "n": _INT, "error": _STR, "message": _STR}),
        },
    }
)

SELFTEST = _obj(
    {
        "passed": _BOOL,
        "suites": {"type": "object", "additionalProperties": _obj({"passed": _BOOL, "checked": _INT})},
    }
)

SCHEMAS = {
    "bound": BOUND,
    "table": {"type": "array", "items": TABLE_ROW},
    "phi": PHI,
    "construct": CONSTRUCT,
    "certify": CERTIFY,
    "search": SEARCH,
    "compare": {"type": "array", "items": COMPARE_ROW},
    "prove": TRANSCRIPT,
    "sweep": SWEEP,
    "selftest": SELFTEST,
}
