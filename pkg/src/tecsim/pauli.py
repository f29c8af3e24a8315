"""Exact n-qubit Pauli algebra in binary symplectic form.

An operator is stored as two integer bitsets plus a power of i:
bit q of ``x_bits``/``z_bits`` selects the X/Z component on qubit q, with
(x, z) = (1, 1) meaning a literal Y, and the full operator is
``i**phase_exp * W_0 x W_1 x ...`` with each ``W_q`` in {I, X, Y, Z}.
Integer bitsets make every group operation a handful of word-parallel
bit operations regardless of qubit count.
"""

from __future__ import annotations

from dataclasses import dataclass

_LETTERS = "IXZY"  # index = x_bit + 2 * z_bit
_PHASE_PREFIX = {0: "", 1: "i", 2: "-", 3: "-i"}
_PHASE_VALUE = {0: 1, 1: 1j, 2: -1, 3: -1j}


def _product_i_exponent(x1: int, z1: int, x2: int, z2: int) -> int:
    """i-exponent (mod 4) picked up by the qubit-wise product of two strings.

    Per qubit the product of the literal Paulis selected by (x1, z1) and
    (x2, z2) is i**g times the literal Pauli selected by the XOR of the
    bits; ``pos``/``neg`` mark the qubits with g = +1 / g = -1.
    """
    pos = (x1 & z1 & z2 & ~x2) | (x1 & ~z1 & x2 & z2) | (z1 & ~x1 & x2 & ~z2)
    neg = (x1 & z1 & x2 & ~z2) | (x1 & ~z1 & ~x2 & z2) | (z1 & ~x1 & x2 & z2)
    return (pos.bit_count() - neg.bit_count()) % 4


@dataclass(frozen=True)
class PauliOperator:
    """An n-qubit Pauli string with an exact phase in {+1, +i, -1, -i}."""

    n: int
    x_bits: int
    z_bits: int
    phase_exp: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"qubit count must be >= 1, got {self.n}")
        mask = (1 << self.n) - 1
        if self.x_bits & ~mask or self.z_bits & ~mask:
            raise ValueError("bitset extends past the declared qubit count")
        if not 0 <= self.phase_exp <= 3:
            raise ValueError(f"phase exponent must be in 0..3, got {self.phase_exp}")

    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        return cls(n, 0, 0, 0)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliOperator":
        """One non-identity letter on ``qubit``, identity elsewhere."""
        if not 0 <= qubit < n:
            raise IndexError(f"qubit {qubit} out of range for {n} qubits")
        code = _LETTERS.index(letter)
        return cls(n, (code & 1) << qubit, (code >> 1) << qubit, 0)

    @classmethod
    def from_text(cls, text: str) -> "PauliOperator":
        return pauli_from_text(text)

    @property
    def phase(self) -> complex:
        return _PHASE_VALUE[self.phase_exp]

    @property
    def is_identity_string(self) -> bool:
        """True when every letter is I (any phase)."""
        return self.x_bits == 0 and self.z_bits == 0

    @property
    def is_hermitian(self) -> bool:
        return self.phase_exp in (0, 2)

    @property
    def weight(self) -> int:
        return (self.x_bits | self.z_bits).bit_count()

    def support(self) -> tuple[int, ...]:
        bits = self.x_bits | self.z_bits
        return tuple(q for q in range(self.n) if (bits >> q) & 1)

    def letter(self, qubit: int) -> str:
        return _LETTERS[((self.x_bits >> qubit) & 1) + 2 * ((self.z_bits >> qubit) & 1)]

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        return multiply(self, other)

    def commutes_with(self, other: "PauliOperator") -> bool:
        return commutes(self, other)

    def to_text(self) -> str:
        return pauli_to_text(self)

    def __str__(self) -> str:
        return self.to_text()


def pauli_from_text(text: str) -> PauliOperator:
    """Parse a string like ``"XZ"``, ``"-Y"`` or ``"iXY"`` into an operator."""
    if not text:
        raise ValueError("empty Pauli string")
    phase_exp = 0
    pos = 0
    if text[pos] in "+-":
        phase_exp = 2 if text[pos] == "-" else 0
        pos += 1
    if pos < len(text) and text[pos] == "i":
        phase_exp = (phase_exp + 1) % 4
        pos += 1
    body = text[pos:]
    if not body:
        raise ValueError(f"no Pauli letters after prefix in {text!r}")
    x_bits = z_bits = 0
    for q, ch in enumerate(body):
        if ch not in _LETTERS:
            raise ValueError(
                f"invalid character {ch!r} at position {pos + q} in {text!r}"
            )
        code = _LETTERS.index(ch)
        x_bits |= (code & 1) << q
        z_bits |= (code >> 1) << q
    return PauliOperator(len(body), x_bits, z_bits, phase_exp)


def pauli_to_text(op: PauliOperator) -> str:
    """Canonical text form; inverse of :func:`pauli_from_text`."""
    letters = "".join(op.letter(q) for q in range(op.n))
    return _PHASE_PREFIX[op.phase_exp] + letters


def multiply(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    """Matrix product a @ b with the exact group phase."""
    if a.n != b.n:
        raise ValueError(f"operator sizes differ: {a.n} vs {b.n}")
    exp = (a.phase_exp + b.phase_exp + _product_i_exponent(a.x_bits, a.z_bits, b.x_bits, b.z_bits)) % 4
    return PauliOperator(a.n, a.x_bits ^ b.x_bits, a.z_bits ^ b.z_bits, exp)


def commutes(a: PauliOperator, b: PauliOperator) -> bool:
    """True iff the symplectic product of the two strings is 0."""
    if a.n != b.n:
        raise ValueError(f"operator sizes differ: {a.n} vs {b.n}")
    return (((a.x_bits & b.z_bits).bit_count() + (a.z_bits & b.x_bits).bit_count()) & 1) == 0
