"""Tests for JSON spec parsing into symbols, targets and disc maps."""

import pytest

from conftest import (
    DIAGONAL_SPEC,
    HALF_DISC_MAP,
    RESTRICTED_SPEC,
    SEVEN_QUARTERS_SPEC,
    UNDECIDABLE_SPEC,
)
from compop.errors import LabError
from compop.specs import (
    load_disc_map,
    load_json,
    load_symbol,
    load_target,
    parse_disc_map,
    parse_symbol,
    parse_target,
    symbol_to_spec,
)
from compop.symbols import LinearSymbol, RestrictedRangeLift, Symbol


def _code(fn, *args) -> str:
    with pytest.raises(LabError) as exc:
        fn(*args)
    return exc.value.code


class TestParseSymbol:
    def test_general_form(self):
        sym = parse_symbol(DIAGONAL_SPEC)
        assert isinstance(sym, Symbol)
        assert sym.c0 == 1
        assert sym.psi.terms == {1: 1.0}

    def test_linear_form(self):
        sym = parse_symbol(SEVEN_QUARTERS_SPEC)
        assert isinstance(sym, LinearSymbol)
        assert sym.c1 == 1.75
        assert sym.terms == ((2, -0.25 + 0j),)

    def test_dependent_psi_stays_general(self):
        sym = parse_symbol(UNDECIDABLE_SPEC)
        assert isinstance(sym, Symbol)
        assert sym.psi.support == [1, 2, 4]

    def test_c1_terms_with_positive_c0(self):
        sym = parse_symbol({"c0": 2, "c1": [1.0, 0.5], "terms": [[3, 0.25, 0.0]]})
        assert isinstance(sym, Symbol)
        assert sym.psi.terms == {1: 1.0 + 0.5j, 3: 0.25}

    def test_huge_frequency_string(self):
        big = 2**64 + 1
        sym = parse_symbol({"c0": 0, "psi": [["1", 2.0, 0.0], [str(big), 0.1, 0.0]]})
        assert big in sym.psi.terms

    def test_restricted_truncation(self):
        sym = parse_symbol(RESTRICTED_SPEC)
        assert sym.psi.support[-1] == 2**16

    def test_roundtrip_linear(self):
        sym = LinearSymbol(1.5 + 0.25j, ((2, -0.3), (5, 0.1j)))
        assert parse_symbol(symbol_to_spec(sym)) == sym


class TestSpecErrors:
    def test_negative_c0(self):
        with pytest.raises(LabError) as exc:
            parse_symbol({"c0": -1})
        assert exc.value.code == "SPEC_PARSE_ERROR"
        assert "c0" in exc.value.detail

    def test_psi_and_terms(self):
        data = {"c0": 0, "c1": [1.0, 0.0], "psi": [["1", 1.0, 0.0]]}
        assert _code(parse_symbol, data) == "SPEC_PARSE_ERROR"

    def test_empty_spec(self):
        assert _code(parse_symbol, {"c0": 0}) == "SPEC_PARSE_ERROR"

    def test_dependent_linear_terms(self):
        data = {"c0": 0, "c1": [2.0, 0.0], "terms": [[2, -0.1, 0.0], [4, -0.1, 0.0]]}
        with pytest.raises(LabError, match="invalid linear symbol"):
            parse_symbol(data)

    def test_bad_psi_row(self):
        assert _code(parse_symbol, {"c0": 0, "psi": [["x", 1.0, 0.0]]}) == "SPEC_PARSE_ERROR"
        assert _code(parse_symbol, {"c0": 0, "psi": [["0", 1.0, 0.0]]}) == "SPEC_PARSE_ERROR"

    def test_restricted_needs_c1(self):
        assert _code(parse_target, {"kind": "restricted"}) == "SPEC_PARSE_ERROR"


class TestTargets:
    def test_restricted_lift(self):
        target = parse_target(RESTRICTED_SPEC)
        assert isinstance(target, RestrictedRangeLift)
        assert target.c1 == 1.0

    def test_symbol_passthrough(self):
        assert isinstance(parse_target(SEVEN_QUARTERS_SPEC), LinearSymbol)


class TestDiscMaps:
    def test_half_map(self):
        omega = parse_disc_map(HALF_DISC_MAP)
        assert omega.taylor == (0j, 0.5 + 0j)

    def test_empty_taylor(self):
        assert _code(parse_disc_map, {"taylor": []}) == "SPEC_PARSE_ERROR"

    def test_not_a_self_map(self):
        assert _code(parse_disc_map, {"taylor": [[0.0, 0.0], [2.0, 0.0]]}) == "VALIDATION_ERROR"


class TestFiles:
    def test_loaders(self, write_spec):
        assert isinstance(load_symbol(write_spec("s.json", SEVEN_QUARTERS_SPEC)), LinearSymbol)
        assert isinstance(load_target(write_spec("r.json", RESTRICTED_SPEC)), RestrictedRangeLift)
        assert load_disc_map(write_spec("w.json", HALF_DISC_MAP)).order == 1

    def test_missing_file(self, tmp_path):
        with pytest.raises(LabError, match="not found"):
            load_json(tmp_path / "nope.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(LabError, match="valid JSON"):
            load_json(path)

    def test_not_an_object(self, tmp_path):
        path = tmp_path / "list.json"
        path.write_text("[1, 2]")
        with pytest.raises(LabError, match="object"):
            load_json(path)
