"""Job and report documents.

A job names a presentation and a representation (per-generator matrices as
field-element strings in a described field).  Reports are plain dicts that
serialize deterministically: sorted keys, fixed iteration orders and no
timestamps, so identical inputs give byte-identical output.
"""

import hashlib
import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path

import mpmath

from . import __version__
from .algebra import BigComplexField, FieldError, field_from_description
from .charvar import INFINITY, read_fixture_json
from .presentation import PresentationError, parse_presentation
from .torsion import Representation, RepresentationError

JOB_SCHEMA = "knottorsion/job/1"
REPORT_SCHEMA = "knottorsion/report/1"
CURVE_SCHEMA = "knottorsion/fixture/1"


class JobError(ValueError):
    """Invalid job document (exit code 1)."""

    def __init__(self, message, path=None):
        super().__init__(message)
        self.path = path

    def record(self):
        rec = {"kind": "validation", "message": str(self)}
        if self.path:
            rec["path"] = self.path
        return rec


@dataclass
class JobDocument:
    name: str
    presentation: object
    representation: dict
    diagnostics: dict = dc_field(default_factory=dict)
    precision: int | None = None
    description: str = ""
    provenance: dict = dc_field(default_factory=dict)

    @property
    def numeric(self):
        return self.representation.get("kind") == "numeric"

    def field(self, precision=None):
        desc = dict(self.representation["field"])
        digits = precision or self.precision
        if desc["kind"] == "complex" and digits:
            desc["precision"] = int(digits)
            desc.pop("tolerance", None)
        return field_from_description(desc)

    def build(self, precision=None):
        """Representation over the declared field, relators checked."""
        try:
            K = self.field(precision)
        except (FieldError, KeyError, ValueError) as exc:
            raise JobError(f"bad field description: {exc}", "representation.field") from None
        mats = []
        given = self.representation.get("matrices", {})
        for g in self.presentation.generators:
            if g not in given:
                raise JobError(f"no matrix for generator {g!r}", f"representation.matrices.{g}")
            try:
                mats.append([[K.parse(str(x)) for x in row] for row in given[g]])
            except (FieldError, ValueError, ZeroDivisionError) as exc:
                raise JobError(f"cannot parse matrix entry: {exc}", f"representation.matrices.{g}") from None
        extra = sorted(set(given) - set(self.presentation.generators))
        if extra:
            raise JobError(f"matrices given for unknown generators {extra}", "representation.matrices")
        try:
            return Representation(self.presentation, K, mats)
        except RepresentationError as exc:
            raise JobError(str(exc), "representation") from None

    def to_dict(self):
        d = {
            "schema": JOB_SCHEMA,
            "kind": "job",
            "name": self.name,
            "presentation": self.presentation.format(),
            "representation": self.representation,
        }
        if self.description:
            d["description"] = self.description
        if self.diagnostics:
            d["diagnostics"] = self.diagnostics
        if self.precision:
            d["precision"] = self.precision
        if self.provenance:
            d["provenance"] = self.provenance
        return d


def parse_job(data):
    if not isinstance(data, dict):
        raise JobError("job document must be a JSON object")
    schema = data.get("schema")
    if schema != JOB_SCHEMA:
        raise JobError(f"unsupported schema {schema!r}, expected {JOB_SCHEMA!r}", "schema")
    if data.get("kind", "job") != "job":
        raise JobError(f"expected kind 'job', got {data.get('kind')!r}", "kind")
    try:
        pres = parse_presentation(data["presentation"])
    except KeyError:
        raise JobError("missing presentation", "presentation") from None
    except PresentationError as exc:
        raise JobError(str(exc), "presentation") from None
    rep = data.get("representation")
    if not isinstance(rep, dict) or "field" not in rep or "matrices" not in rep:
        raise JobError("representation needs 'field' and 'matrices'", "representation")
    if rep.get("kind", "exact") not in ("exact", "numeric"):
        raise JobError(f"representation kind must be exact or numeric, got {rep.get('kind')!r}",
                       "representation.kind")
    precision = data.get("precision")
    if precision is not None and (not isinstance(precision, int) or precision < 15):
        raise JobError("precision must be an integer >= 15", "precision")
    return JobDocument(
        name=data.get("name", ""), presentation=pres, representation=rep,
        diagnostics=data.get("diagnostics", {}), precision=precision,
        description=data.get("description", ""), provenance=data.get("provenance", {}))


def read_document(source):
    """Load JSON from a path, or a packaged fixture by name (``conway``,
    ``fixtures/conway.json`` and ``conway.json`` all work)."""
    path = Path(source)
    if path.is_file():
        text = path.read_text()
        try:
            return json.loads(text), text
        except json.JSONDecodeError as exc:
            raise JobError(f"invalid JSON: {exc}") from None
    name = path.name[:-5] if path.name.endswith(".json") else path.name
    try:
        data = read_fixture_json(name)
    except KeyError:
        raise JobError(f"no such file or packaged fixture: {source}") from None
    return data, canonical_json(data)


def canonical_json(data):
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def dumps(report):
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def sha256_text(text):
    return hashlib.sha256(text.encode()).hexdigest()


# -- serialization of values ---------------------------------------------------

def serialize_scalar(K, c):
    if isinstance(c, (bool, int, str)) or c is None:
        return c
    if isinstance(c, Fraction):
        return str(c)
    return K.format(c)


def serialize_laurent(p, var="t"):
    return {
        "field": p.field.describe(),
        "text": p.format(var),
        "coefficients": {str(k): p.field.format(c) for k, c in sorted(p.terms.items())},
    }


def serialize_point(pt):
    return "inf" if pt == INFINITY else str(pt)


def serialize_diagnostics(K, d):
    out = {
        "span": d.span,
        "genus_bound": str(d.genus_bound),
        "odd_rounded_bound": d.odd_rounded_bound,
        "monic": d.monic,
        "real_coefficients": d.real_coefficients,
        "eval_at_1": K.format(d.eval_at_1),
        "eval_at_minus_1": K.format(d.eval_at_minus_1),
        "adjoint": d.adjoint,
    }
    if not d.adjoint:
        out["nonvanishing_at_roots_of_unity"] = d.nonvanishing
        out["nonvanishing_checked_up_to"] = d.nonvanishing_checked_up_to
        out["first_vanishing_m"] = d.first_vanishing_m
    if not K.exact:
        out["monic_margin"] = _margin(d.monic_margin)
        out["real_margin"] = _margin(d.real_margin)
        out["tolerance"] = _margin(K.tolerance)
    return out


def _margin(x):
    if x is None:
        return None
    return mpmath.nstr(x, 5)


def provenance(input_text, precision=None, rows=None, extra=None):
    p = {
        "input_sha256": sha256_text(input_text),
        "tool": "knottorsion",
        "tool_version": __version__,
    }
    if precision is not None:
        p["precision"] = precision
    if rows is not None:
        p["rows"] = rows
    if extra:
        p.update(extra)
    return p


def error_record(kind, message, **extra):
    rec = {"kind": kind, "message": message}
    rec.update(extra)
    return rec


def error_report(records):
    return {"schema": REPORT_SCHEMA, "status": "error", "errors": records}


def precision_of(K):
    return K.precision if isinstance(K, BigComplexField) else None
