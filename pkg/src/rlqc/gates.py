"""Gate bases: construction, the built-in sets, parsing and serialization.

A GateSet is the agent's discrete action space; action index i always
maps to gates[i], and that ordering is frozen for the built-in sets so
checkpoints stay valid across builds.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ParseError, ValidationError
from .unitary import (CONSTRUCTION_ATOL, format_matrix, parse_matrix,
                      require_unitary)

MAX_GATES = 64

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def rotation(axis: str, angle: float) -> np.ndarray:
    """Bloch-sphere rotation exp(-i*angle*sigma_axis/2).

    Convention: rotation('z', t) = diag(e^{-it/2}, e^{+it/2}).
    """
    if axis not in _PAULI:
        raise DomainError(f"axis must be one of x, y, z, got {axis!r}")
    if not math.isfinite(angle):
        raise DomainError(f"rotation angle must be finite, got {angle!r}")
    half = 0.5 * angle
    return math.cos(half) * np.eye(2, dtype=np.complex128) \
        - 1j * math.sin(half) * _PAULI[axis]


@dataclass(frozen=True)
class GateSet:
    """Named, ordered list of labeled 2x2 unitaries. Immutable."""

    name: str
    labels: tuple[str, ...]
    matrices: np.ndarray = field(repr=False)  # shape (k, 2, 2), read-only

    def __post_init__(self):
        if not 1 <= len(self.labels) <= MAX_GATES:
            raise ValidationError(
                f"gate set needs 1..{MAX_GATES} gates, got {len(self.labels)}")
        if len(set(self.labels)) != len(self.labels):
            dupes = sorted({l for l in self.labels if self.labels.count(l) > 1})
            raise ValidationError(f"duplicate gate labels: {dupes}")
        mats = np.asarray(self.matrices, dtype=np.complex128)
        if mats.shape != (len(self.labels), 2, 2):
            raise ValidationError(
                f"matrices shape {mats.shape} does not match {len(self.labels)} labels")
        for label, m in zip(self.labels, mats):
            require_unitary(m, CONSTRUCTION_ATOL, what=f"gate {label!r}")
        mats.setflags(write=False)
        object.__setattr__(self, "matrices", mats)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(zip(self.labels, self.matrices))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValidationError(
                f"no gate {label!r} in set {self.name!r}") from None

    def matrix(self, label: str) -> np.ndarray:
        return self.matrices[self.index(label)]


def make_gateset(name: str, gates: list[tuple[str, np.ndarray]]) -> GateSet:
    labels = tuple(label for label, _ in gates)
    mats = np.stack([np.asarray(m, dtype=np.complex128) for _, m in gates]) \
        if gates else np.zeros((0, 2, 2), dtype=np.complex128)
    return GateSet(name=name, labels=labels, matrices=mats)


def _rot_pi_128() -> GateSet:
    theta = math.pi / 128
    gates = []
    for axis in "xyz":
        gates.append((f"R{axis}+", rotation(axis, theta)))
        gates.append((f"R{axis}-", rotation(axis, -theta)))
    return make_gateset("rot-pi-128", gates)


def _hrc() -> GateSet:
    """The three Harrow-Recht-Chuang efficiently universal gates."""
    s5 = math.sqrt(5.0)
    v1 = np.array([[1, 2j], [2j, 1]], dtype=np.complex128) / s5
    v2 = np.array([[1, 2], [-2, 1]], dtype=np.complex128) / s5
    v3 = np.array([[1 + 2j, 0], [0, 1 - 2j]], dtype=np.complex128) / s5
    return make_gateset("hrc", [("V1", v1), ("V2", v2), ("V3", v3)])


_BUILTIN = {"rot-pi-128": _rot_pi_128, "hrc": _hrc}


def builtin(name: str) -> GateSet:
    """One of the built-in bases: 'rot-pi-128' (six +-pi/128 rotations,
    order Rx+ Rx- Ry+ Ry- Rz+ Rz-) or 'hrc' (V1, V2, V3)."""
    try:
        factory = _BUILTIN[name]
    except KeyError:
        raise NameError(
            f"unknown gate set {name!r}; available: {sorted(_BUILTIN)}") from None
    return factory()


def builtin_names() -> list[str]:
    return sorted(_BUILTIN)


def serialize_gateset(gs: GateSet) -> str:
    """Gate-set file format: '#' comments, a 'gateset <name>' line, then
    one '<label> <8 floats>' line per gate (matrix text format)."""
    lines = [f"gateset {gs.name}"]
    for label, m in gs:
        lines.append(f"{label} {format_matrix(m)}")
    return "\n".join(lines) + "\n"


def parse_gateset(text: str) -> GateSet:
    """Parse the gate-set file format; inverse of serialize_gateset."""
    name = None
    gates: list[tuple[str, np.ndarray]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if name is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "gateset":
                raise ParseError(
                    f"line {lineno}: expected 'gateset <name>', got {raw!r}")
            name = parts[1]
            continue
        fields = line.split(None, 1)
        if len(fields) != 2:
            raise ParseError(f"line {lineno}: expected '<label> <8 floats>'")
        label, rest = fields
        try:
            matrix = parse_matrix(rest)
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        gates.append((label, matrix))
    if name is None:
        raise ParseError("missing 'gateset <name>' header line")
    if not gates:
        raise ParseError(f"gate set {name!r} has no gates")
    return make_gateset(name, gates)


def gateset_hash(gs: GateSet) -> str:
    """sha256 of the canonical serialization; identifies a set exactly."""
    return hashlib.sha256(serialize_gateset(gs).encode()).hexdigest()
