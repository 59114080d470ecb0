"""Tiny construction language for triangulations.

    cycle(3)                       n-gon, loop ``cycle``
    simplex(d)                     boundary of the d-simplex
    crosspoly(d)                   boundary of the d-cross-polytope, with antipode
    point()
    subdiv(X)                      barycentric subdivision
    product(A, B)                  staircase product, loops ``L.*`` / ``R.*``
    cellprod(A, B)                 subdivided product cell complex (keeps involutions)
    quotient(X, antipode)          free quotient, subdividing up to twice; adds ``core``
    consum(A, B)                   connected sum, loops ``L.*`` / ``R.*``
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import simplicial as sx
from .fpgroup.words import ParseError, tokenize


@dataclass(frozen=True)
class Call:
    op: str
    args: tuple[Union["Call", int, str], ...]
    column: int

    def __str__(self):
        return f"{self.op}({', '.join(str(a) for a in self.args)})"


_ARITY = {
    "cycle": ("int",),
    "simplex": ("int",),
    "crosspoly": ("int",),
    "point": (),
    "subdiv": ("expr",),
    "product": ("expr", "expr"),
    "cellprod": ("expr", "expr"),
    "quotient": ("expr", "name"),
    "consum": ("expr", "expr"),
}

INVOLUTIONS = ("antipode",)


def parse_recipe(text: str) -> Call:
    tokens = tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def expect(value):
        nonlocal pos
        tok = peek()
        if tok is None or tok[1] != value:
            col = tok[2] if tok else len(text) + 1
            raise ParseError(f"expected {value!r}", column=col)
        pos += 1

    def call() -> Call:
        nonlocal pos
        tok = peek()
        if tok is None or tok[0] != "ident":
            raise ParseError("expected a construction name", column=tok[2] if tok else len(text) + 1)
        op, col = tok[1], tok[2]
        if op not in _ARITY:
            raise ParseError(f"unknown construction {op!r}", column=col)
        pos += 1
        expect("(")
        args = []
        kinds = _ARITY[op]
        for i, kind in enumerate(kinds):
            if i:
                if op == "quotient" and peek() is not None and peek()[1] == ")":
                    break  # involution argument is optional
                expect(",")
            tok = peek()
            if tok is None:
                raise ParseError("unexpected end of recipe", column=len(text) + 1)
            if kind == "int":
                if tok[0] != "int":
                    raise ParseError("expected an integer", column=tok[2])
                args.append(int(tok[1]))
                pos += 1
            elif kind == "name":
                if tok[0] != "ident" or tok[1] not in INVOLUTIONS:
                    raise ParseError(f"expected one of {INVOLUTIONS}", column=tok[2])
                args.append(tok[1])
                pos += 1
            else:
                args.append(call())
        expect(")")
        return Call(op, tuple(args), col)

    root = call()
    if peek() is not None:
        raise ParseError(f"unexpected token {peek()[1]!r}", column=peek()[2])
    return root


def loop_names(expr: Call) -> set[str]:
    """Loop names the built complex will carry, without building it."""
    op, args = expr.op, expr.args
    if op == "cycle":
        return {"cycle"}
    if op in ("simplex", "crosspoly", "point"):
        return set()
    if op == "subdiv":
        return loop_names(args[0])
    if op == "quotient":
        return {"core"} | loop_names(args[0])
    if op in ("product", "cellprod", "consum"):
        return {"L." + n for n in loop_names(args[0])} | {"R." + n for n in loop_names(args[1])}
    raise AssertionError(op)


def build(expr: Union[Call, str]) -> sx.OrderedComplex:
    if isinstance(expr, str):
        expr = parse_recipe(expr)
    op, args = expr.op, expr.args
    if op == "cycle":
        return sx.cycle(args[0])
    if op == "simplex":
        return sx.simplex_boundary(args[0])
    if op == "crosspoly":
        return sx.cross_polytope_boundary(args[0])
    if op == "point":
        return sx.point()
    if op == "subdiv":
        return sx.barycentric_subdivision(build(args[0]))
    if op == "product":
        return sx.ordered_product(build(args[0]), build(args[1]))
    if op == "cellprod":
        return sx.product_subdivision(build(args[0]), build(args[1]))
    if op == "quotient":
        return sx.quotient_with_subdivision(build(args[0]))
    if op == "consum":
        return sx.connected_sum(build(args[0]), build(args[1]))
    raise AssertionError(op)
