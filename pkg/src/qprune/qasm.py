"""OpenQASM 2.0 subset reader and writer.

Supported: the ``OPENQASM 2.0;`` header, ``include`` lines, one ``qreg``,
``barrier`` (dropped) and applications of the gate names in
:data:`GATE_NAMES`. Angles may be constant expressions built from numbers,
``pi``, parentheses, ``+ - * /`` and unary minus.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .circuit import Circuit, Gate, GateKind

GATE_NAMES: dict[str, GateKind] = {k.value: k for k in GateKind}
GATE_NAMES["cu1"] = GateKind.CP


class QasmError(ValueError):
    def __init__(self, message: str, line: int, col: int) -> None:
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


@dataclass
class _Tok:
    kind: str  # "id", "num", "str", "op", "eof"
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>//[^\n]*)
  | (?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][-+]?\d+)?)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<str>"[^"\n]*")
  | (?P<op>->|[\[\](),;+\-*/^{}])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise QasmError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str) -> None:
        self.toks = _tokenize(text)
        self.i = 0
        self.reg_name: str | None = None
        self.size = 0
        self.gates: list[Gate] = []

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.tok
        raise QasmError(msg, tok.line, tok.col)

    def next(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> _Tok:
        if self.tok.kind in ("str", "eof") or self.tok.text != text:
            self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.next()

    def expect_kind(self, kind: str, what: str) -> _Tok:
        if self.tok.kind != kind:
            self.error(f"expected {what}, found {self.tok.text or 'end of input'!r}")
        return self.next()

    # -- statements --

    def parse(self) -> Circuit:
        if self.tok.kind == "id" and self.tok.text == "OPENQASM":
            self.next()
            version = self.expect_kind("num", "version number")
            if version.text not in ("2.0", "2"):
                self.error(f"unsupported OpenQASM version {version.text}", version)
            self.expect(";")
        while self.tok.kind != "eof":
            self.statement()
        if self.reg_name is None:
            self.error("no qreg declared")
        return Circuit(self.size, tuple(self.gates))

    def statement(self) -> None:
        tok = self.tok
        if tok.kind != "id":
            self.error(f"unexpected {tok.text!r}")
        word = tok.text
        if word == "include":
            self.next()
            self.expect_kind("str", "file name")
            self.expect(";")
        elif word == "qreg":
            self.next()
            if self.reg_name is not None:
                self.error("only one quantum register is supported", tok)
            name = self.expect_kind("id", "register name").text
            self.expect("[")
            size = int(self.expect_kind("num", "register size").text)
            self.expect("]")
            self.expect(";")
            if size < 1:
                self.error("register size must be positive", tok)
            self.reg_name, self.size = name, size
        elif word == "barrier":
            self.next()
            self.qarg(whole_ok=True)
            while self.tok.text == ",":
                self.next()
                self.qarg(whole_ok=True)
            self.expect(";")
        elif word in GATE_NAMES:
            self.gate_application()
        else:
            self.error(f"unsupported statement or gate {word!r}")

    def gate_application(self) -> None:
        head = self.next()
        kind = GATE_NAMES[head.text]
        angle = None
        if self.tok.text == "(":
            self.next()
            angle = self.expr()
            self.expect(")")
        if kind.parametric and angle is None:
            self.error(f"gate {head.text} needs an angle", head)
        if not kind.parametric and angle is not None:
            self.error(f"gate {head.text} takes no angle", head)
        qubits = [self.qarg()]
        while self.tok.text == ",":
            self.next()
            qubits.append(self.qarg())
        self.expect(";")
        if len(qubits) != kind.num_qubits:
            self.error(f"gate {head.text} takes {kind.num_qubits} qubit(s), got {len(qubits)}", head)
        if len(set(qubits)) != len(qubits):
            self.error(f"duplicate qubit operand in {head.text}", head)
        self.gates.append(Gate(kind, tuple(qubits), angle))

    def qarg(self, whole_ok: bool = False) -> int | None:
        name = self.expect_kind("id", "qubit argument")
        if self.reg_name is None:
            self.error("qubit used before qreg declaration", name)
        if name.text != self.reg_name:
            self.error(f"unknown register {name.text!r}", name)
        if whole_ok and self.tok.text != "[":
            return None
        if self.tok.text != "[":
            self.error("whole-register arguments are not supported")
        self.next()
        idx_tok = self.expect_kind("num", "qubit index")
        if not idx_tok.text.isdigit():
            self.error(f"invalid qubit index {idx_tok.text}", idx_tok)
        idx = int(idx_tok.text)
        self.expect("]")
        if idx >= self.size:
            self.error(f"qubit index {idx} out of range for {self.reg_name}[{self.size}]", idx_tok)
        return idx

    # -- constant expressions --

    def expr(self) -> float:
        value = self.term()
        while self.tok.text in ("+", "-"):
            op = self.next().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> float:
        value = self.unary()
        while self.tok.text in ("*", "/"):
            op = self.next()
            rhs = self.unary()
            if op.text == "*":
                value *= rhs
            else:
                if rhs == 0:
                    self.error("division by zero in angle expression", op)
                value /= rhs
        return value

    def unary(self) -> float:
        if self.tok.text == "-":
            self.next()
            return -self.unary()
        if self.tok.text == "+":
            self.next()
            return self.unary()
        return self.atom()

    def atom(self) -> float:
        tok = self.tok
        if tok.kind == "num":
            self.next()
            return float(tok.text)
        if tok.kind == "id" and tok.text == "pi":
            self.next()
            return math.pi
        if tok.text == "(":
            self.next()
            value = self.expr()
            self.expect(")")
            return value
        self.error(f"malformed angle expression near {tok.text or 'end of input'!r}")


def parse_qasm(text: str) -> Circuit:
    return _Parser(text).parse()


def _fmt_angle(x: float) -> str:
    # repr is the shortest string that round-trips exactly (up to 17 digits)
    return repr(float(x))


def emit_qasm(circuit: Circuit, reg: str = "q") -> str:
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg {reg}[{circuit.num_qubits}];"]
    for g in circuit.gates:
        args = ",".join(f"{reg}[{q}]" for q in g.qubits)
        if g.angle is None:
            lines.append(f"{g.kind.value} {args};")
        else:
            lines.append(f"{g.kind.value}({_fmt_angle(g.angle)}) {args};")
    return "\n".join(lines) + "\n"
