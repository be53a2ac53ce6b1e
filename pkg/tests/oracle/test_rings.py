"""Tests for finite rings and their ideals."""

import json
from pathlib import Path

import numpy as np
import pytest

from elemcomm.core.errors import RingValidationError, UnknownRing
from elemcomm.oracle.rings import (
    FiniteIdeal,
    ideal_generated,
    ideal_ops,
    load_ring_file,
    resolve_ideal,
    ring_builtin,
    ring_from_spec,
    whole_ideal,
)
from elemcomm.schemas import RingSpec


class TestBuiltins:
    def test_zmod(self) -> None:
        ring = ring_builtin("zmod:4")
        assert ring.order == 4
        assert ring.mul[2, 2] == ring.zero
        assert ring.from_int(-1) == ring.index("3")
        assert ring.from_int(6) == ring.index("2")

    def test_dual_numbers(self) -> None:
        ring = ring_builtin("dual:2")
        t = ring.index("t")
        assert ring.mul[t, t] == ring.zero
        assert ring.ideals["t"] == frozenset({ring.zero, t})

    def test_upper_triangular_is_noncommutative(self) -> None:
        ring = ring_builtin("t2f2")
        assert ring.order == 8
        assert not np.array_equal(ring.mul, ring.mul.T)
        assert ring.label(ring.one) == "[10;1]"

    @pytest.mark.parametrize("name", ["zmod:1", "zmod:17", "zmod:x", "gf:4", "t2f2:3"])
    def test_unknown(self, name: str) -> None:
        with pytest.raises(UnknownRing):
            ring_builtin(name)

    def test_unknown_label(self) -> None:
        with pytest.raises(RingValidationError):
            ring_builtin("zmod:4").index("5")


class TestIdeals:
    def test_resolve_forms(self) -> None:
        ring = ring_builtin("zmod:8")
        generated = resolve_ideal(ring, "2")
        assert generated.order == 4
        assert str(generated) == "(2)"
        assert resolve_ideal(ring, "R") == whole_ideal(ring)
        assert resolve_ideal(ring, "{0,4}").order == 2
        assert resolve_ideal(ring, "4,6") == resolve_ideal(ring, "2")

    def test_named_ideal(self) -> None:
        ring = ring_builtin("t2f2")
        strict = resolve_ideal(ring, "strict")
        assert strict.order == 2
        assert str(strict) == "strict"

    def test_generated_is_two_sided(self) -> None:
        ring = ring_builtin("t2f2")
        # e11 generates {0, e11, e12, e11+e12}
        e11 = ring.index("[10;0]")
        assert ideal_generated(ring, [e11]).order == 4

    def test_non_ideal_subset(self) -> None:
        ring = ring_builtin("zmod:4")
        with pytest.raises(RingValidationError):
            FiniteIdeal(ring, frozenset({0, 1}))
        with pytest.raises(RingValidationError):
            resolve_ideal(ring, "{1,3}")

    def test_ideal_ops(self) -> None:
        ring = ring_builtin("zmod:8")
        a = resolve_ideal(ring, "2")
        b = resolve_ideal(ring, "4")
        ops = ideal_ops(ring, a, b)
        assert ops["AB"].members == frozenset({0})
        assert ops["AB+BA"].members == frozenset({0})
        assert ops["AB+BA+A^2"].members == frozenset({0, 4})
        assert ops["AB+BA+B^2"].members == frozenset({0})

    def test_ideal_ops_noncommutative(self) -> None:
        ring = ring_builtin("t2f2")
        strict = resolve_ideal(ring, "strict")
        diagonal = resolve_ideal(ring, "[10;0]")
        ops = ideal_ops(ring, diagonal, strict)
        assert ops["AB"] == strict
        assert ops["AB+BA"] == strict


def _spec_payload() -> dict[str, object]:
    return {
        "name": "f2",
        "elements": ["0", "1"],
        "add": [[0, 1], [1, 0]],
        "mul": [[0, 0], [0, 1]],
        "one": 1,
        "ideals": {"zero": [0]},
    }


class TestRingFiles:
    def test_load(self, tmp_path: Path) -> None:
        path = tmp_path / "f2.json"
        path.write_text(json.dumps(_spec_payload()))
        ring = load_ring_file(path)
        assert ring.name == "f2"
        assert ring.ideals["zero"] == frozenset({0})

    def test_failed_law_has_witness(self) -> None:
        payload = _spec_payload()
        payload["mul"] = [[0, 0], [0, 0]]
        with pytest.raises(RingValidationError) as exc:
            ring_from_spec(RingSpec.model_validate(payload))
        assert exc.value.reason == "multiplicative unit"
        assert exc.value.witness

    def test_non_associative_addition(self) -> None:
        payload = _spec_payload()
        payload["elements"] = ["0", "1", "2"]
        payload["add"] = [[0, 1, 2], [1, 0, 0], [2, 0, 1]]
        payload["mul"] = [[0, 0, 0], [0, 1, 2], [0, 2, 1]]
        payload["ideals"] = {}
        with pytest.raises(RingValidationError):
            ring_from_spec(RingSpec.model_validate(payload))

    def test_malformed_file(self, tmp_path: Path) -> None:
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(RingValidationError):
            load_ring_file(path)
        payload = _spec_payload()
        payload["add"] = [[0, 1]]
        path.write_text(json.dumps(payload))
        with pytest.raises(RingValidationError):
            load_ring_file(path)

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(RingValidationError):
            load_ring_file(tmp_path / "missing.json")
