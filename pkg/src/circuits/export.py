"""Serialization of MUB circuits: JSON records, OpenQASM 2.0 and plain text."""
from typing import Any, Dict, List
import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent))

from circuits.mub_circuit import Gate, MubCircuit, build_circuit, cz_subpart, emit_gates
from gf2n.field import IrreduciblePoly
from gf2n.polynomial import degree, format_poly, parse_poly

FORMATS = ("json", "qasm", "text")


def to_json_record(circuit: MubCircuit) -> Dict[str, Any]:
    return {
        "n": circuit.n,
        "j": circuit.j,
        "poly": circuit.poly_text,
        "s_exp": list(circuit.s_exp),
        "cz_pairs": [list(pair) for pair in sorted(circuit.cz_pairs())],
    }


def from_json_record(record: Dict[str, Any]) -> MubCircuit:
    """Rebuild a circuit from its JSON record and check it against the formula for (poly, j)."""
    try:
        n = int(record["n"])
        j = int(record["j"])
        poly = parse_poly(str(record["poly"]))
        s_exp = tuple(int(a) for a in record["s_exp"])
        pairs = {tuple(int(q) for q in pair) for pair in record["cz_pairs"]}
    except (KeyError, TypeError) as e:
        raise ValueError(f"malformed circuit record: {e}") from None
    if degree(poly) != n:
        raise ValueError(f"polynomial {format_poly(poly)} does not have degree {n}")
    if len(s_exp) != n or any(a not in (0, 1, 2, 3) for a in s_exp):
        raise ValueError(f"bad S exponents {s_exp} for n={n}")
    flags = []
    for m in range(1, 2 * n - 2):
        sub = set(cz_subpart(n, m).pairs)
        present = sub & pairs
        if present and present != sub:
            raise ValueError(f"CZ pairs only partially cover sub-part CZ({m})")
        flags.append(1 if present else 0)
        pairs -= sub
    if pairs:
        raise ValueError(f"CZ pairs outside the circuit register: {sorted(pairs)}")
    circuit = MubCircuit(n=n, j=j, poly=poly, s_exp=s_exp, cz_flags=tuple(flags))
    expected = build_circuit(IrreduciblePoly(poly), j)
    if circuit != expected:
        raise ValueError(f"record does not match circuit U({j}) for {format_poly(poly)}")
    return circuit


def _qasm_line(gate: Gate) -> str:
    args = ",".join(f"q[{q}]" for q in gate.qubits)
    return f"{gate.name} {args};"


def to_qasm(circuit: MubCircuit) -> str:
    lines = [
        f"// mub n={circuit.n} j={circuit.j} poly={circuit.poly_text}",
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{circuit.n}];",
    ]
    lines += [_qasm_line(g) for g in emit_gates(circuit)]
    return "\n".join(lines) + "\n"


def to_text(circuit: MubCircuit) -> str:
    s_part = " ".join(f"q{q}^{a}" for q, a in enumerate(circuit.s_exp) if a) or "-"
    cz_part = " ".join(f"({s},{t})" for s, t in sorted(circuit.cz_pairs())) or "-"
    return f"U({circuit.j}) [{circuit.poly_text}]: H all | S {s_part} | CZ {cz_part}"


def subparts_catalog(n: int) -> List[Dict[str, Any]]:
    """CZ(m) for m = 1..2n-3 as plain records."""
    return [
        {"m": m, "pairs": [list(p) for p in cz_subpart(n, m).pairs]}
        for m in range(1, 2 * n - 2)
    ]
