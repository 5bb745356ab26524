"""JSON serialization of discrete forms.

A form is stored as a list of coefficient records
``{"degree": r, "dirs": [...], "k": [...], "re": x, "im": y}``, sorted by
(degree, k lexicographically, dirs lexicographically).  Round trips are
bit-exact for ``complex`` coefficients: re/im pass through JSON floats
unchanged.
"""

from __future__ import annotations

import json
from typing import List

from .complex4 import AXES
from .forms import DiscreteForm, InhomogeneousForm


class SchemaError(ValueError):
    """A coefficient record fails validation; the message names the index."""


def form_to_records(w) -> List[dict]:
    """Sorted coefficient records of a discrete or inhomogeneous form."""
    records = []
    for (k, dirs), c in w.items():
        z = complex(c)
        records.append({
            "degree": len(dirs),
            "dirs": list(dirs),
            "k": list(k),
            "re": z.real,
            "im": z.imag,
        })
    records.sort(key=lambda r: (r["degree"], r["k"], r["dirs"]))
    return records


def _validate_record(rec, i: int):
    if not isinstance(rec, dict):
        raise SchemaError(f"record {i}: expected an object, got {type(rec).__name__}")
    for field in ("degree", "dirs", "k", "re", "im"):
        if field not in rec:
            raise SchemaError(f"record {i}: missing field {field!r}")
    unknown = set(rec) - {"degree", "dirs", "k", "re", "im"}
    if unknown:
        raise SchemaError(f"record {i}: unknown fields {sorted(unknown)}")
    degree, dirs, k = rec["degree"], rec["dirs"], rec["k"]
    if not isinstance(degree, int) or degree not in range(5):
        raise SchemaError(f"record {i}: degree must be an integer 0..4")
    if (not isinstance(dirs, list) or len(set(dirs)) != len(dirs)
            or any(not isinstance(mu, int) or mu not in AXES for mu in dirs)
            or sorted(dirs) != dirs):
        raise SchemaError(
            f"record {i}: dirs must be a sorted list of distinct axes 0..3"
        )
    if len(dirs) != degree:
        raise SchemaError(f"record {i}: len(dirs) != degree")
    if not isinstance(k, list) or len(k) != 4 \
            or any(not isinstance(x, int) or isinstance(x, bool) for x in k):
        raise SchemaError(f"record {i}: k must be a list of four integers")
    for field in ("re", "im"):
        v = rec[field]
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise SchemaError(f"record {i}: {field} must be a number")


def records_to_form(records) -> InhomogeneousForm:
    """Rebuild an inhomogeneous form from coefficient records."""
    if not isinstance(records, list):
        raise SchemaError("top level: expected a list of records")
    coeffs: dict = {}
    for i, rec in enumerate(records):
        _validate_record(rec, i)
        key = (tuple(rec["k"]), tuple(rec["dirs"]))
        if key in coeffs:
            raise SchemaError(f"record {i}: duplicate key {key}")
        coeffs[key] = complex(rec["re"], rec["im"])
    return InhomogeneousForm.from_coeffs(coeffs)


def records_to_discrete_form(records, degree: int) -> DiscreteForm:
    """Rebuild a degree-homogeneous form; rejects mixed degrees."""
    A = records_to_form(records)
    for r in range(5):
        if r != degree and not A.part(r).is_zero():
            raise SchemaError(
                f"expected a degree-{degree} form, found degree-{r} records"
            )
    return A.part(degree)


def dump_form(w, path: str):
    with open(path, "w") as fh:
        json.dump(form_to_records(w), fh, indent=2)
        fh.write("\n")


def load_form(path: str) -> InhomogeneousForm:
    with open(path) as fh:
        try:
            records = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
    return records_to_form(records)
