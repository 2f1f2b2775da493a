"""Mappers between JSON spec files and domain objects."""

import json
from pathlib import Path

from pydantic import ValidationError

from compop.dirichlet.poly import poly, poly_from_json
from compop.errors import LabError, SPEC_PARSE_ERROR, VALIDATION_ERROR
from compop.models import DiscMapSpec, SymbolSpec
from compop.symbols.symbol import LinearSymbol, RestrictedRangeLift, Symbol, restricted_range_symbol
from compop.transference.maps import DiscSelfMap


def _parse(model, data: dict):
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise LabError(SPEC_PARSE_ERROR, 400, f"malformed spec at {where}: {first['msg']}") from e


def load_json(path: str | Path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except FileNotFoundError as e:
        raise LabError(SPEC_PARSE_ERROR, 400, f"spec file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise LabError(SPEC_PARSE_ERROR, 400, f"spec is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise LabError(SPEC_PARSE_ERROR, 400, "spec must be a JSON object")
    return data


def symbol_from_spec(spec: SymbolSpec) -> Symbol | LinearSymbol:
    """LinearSymbol when the spec lists independent terms, Symbol otherwise."""
    if spec.kind == "restricted":
        if spec.c1 is None:
            raise LabError(SPEC_PARSE_ERROR, 400, "restricted spec needs c1")
        return restricted_range_symbol(complex(*spec.c1), spec.truncation)
    if spec.psi is not None:
        if spec.terms is not None or spec.c1 is not None:
            raise LabError(SPEC_PARSE_ERROR, 400, "give either psi or c1/terms, not both")
        return Symbol(spec.c0, poly_from_json([list(row) for row in spec.psi]))
    if spec.c1 is None:
        raise LabError(SPEC_PARSE_ERROR, 400, "spec needs psi or c1")
    c1 = complex(*spec.c1)
    terms = tuple((q, complex(re, im)) for q, re, im in spec.terms or [])
    if spec.c0 == 0:
        try:
            return LinearSymbol(c1, terms)
        except LabError as e:
            if e.code != VALIDATION_ERROR:
                raise
            raise LabError(SPEC_PARSE_ERROR, 400, f"invalid linear symbol: {e.detail}") from e
    return Symbol(spec.c0, poly([(1, c1), *terms]))


def parse_symbol(data: dict) -> Symbol | LinearSymbol:
    return symbol_from_spec(_parse(SymbolSpec, data))


def load_symbol(path: str | Path) -> Symbol | LinearSymbol:
    return parse_symbol(load_json(path))


def disc_map_from_spec(spec: DiscMapSpec) -> DiscSelfMap:
    return DiscSelfMap(
        taylor=tuple(complex(re, im) for re, im in spec.taylor),
        grid_radius=spec.grid_radius,
        grid_points=spec.grid_points,
    )


def parse_disc_map(data: dict) -> DiscSelfMap:
    return disc_map_from_spec(_parse(DiscMapSpec, data))


def load_disc_map(path: str | Path) -> DiscSelfMap:
    return parse_disc_map(load_json(path))


def symbol_to_spec(sym: Symbol | LinearSymbol) -> dict:
    """Inverse of ``parse_symbol`` for linear and general symbols."""
    if isinstance(sym, LinearSymbol):
        return {
            "c0": 0,
            "c1": [sym.c1.real, sym.c1.imag],
            "terms": [[q, c.real, c.imag] for q, c in sym.terms],
        }
    return {"c0": sym.c0, "psi": [[str(n), c.real, c.imag] for n, c in sym.psi.items()]}


def target_from_spec(spec: SymbolSpec) -> Symbol | LinearSymbol | RestrictedRangeLift:
    """Like ``symbol_from_spec`` but keeps restricted-range specs as their disc lift."""
    if spec.kind == "restricted":
        if spec.c1 is None:
            raise LabError(SPEC_PARSE_ERROR, 400, "restricted spec needs c1")
        return RestrictedRangeLift(complex(*spec.c1))
    return symbol_from_spec(spec)


def parse_target(data: dict) -> Symbol | LinearSymbol | RestrictedRangeLift:
    return target_from_spec(_parse(SymbolSpec, data))


def load_target(path: str | Path) -> Symbol | LinearSymbol | RestrictedRangeLift:
    return parse_target(load_json(path))
