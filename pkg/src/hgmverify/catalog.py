"""Reading the versioned catalog files.

Catalogs are INI-style files: a ``[catalog]`` header section with ``schema`` and
``kind``, then one section per record.  Parameter expressions are rational
arithmetic in the free symbols, parsed with :mod:`ast` and evaluated exactly.
"""

from __future__ import annotations

import ast
import configparser
import operator
from fractions import Fraction
from importlib import resources
from pathlib import Path

SCHEMA = 1

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def eval_expr(text: str, env: dict) -> Fraction:
    """Evaluate a rational expression such as ``(a+b+1)/2`` exactly."""

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise ValueError(f"unknown symbol {node.id!r} in {text!r}")
            return Fraction(env[node.id])
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](walk(node.left), walk(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        raise ValueError(f"unsupported syntax in {text!r}")

    return walk(ast.parse(text.strip(), mode="eval"))


def split_list(text: str, sep: str = ",") -> list[str]:
    return [t.strip() for t in text.split(sep) if t.strip()]


def read_catalog(path=None, default: str = "", kind: str = "") -> configparser.ConfigParser:
    """Load a catalog file (the packaged default when path is None)."""
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    if path is None:
        text = resources.files("hgmverify.data").joinpath(default).read_text(encoding="utf-8")
        source = default
    else:
        text = Path(path).read_text(encoding="utf-8")
        source = str(path)
    parser.read_string(text, source=source)
    if not parser.has_section("catalog"):
        raise ValueError(f"{source}: missing [catalog] header")
    head = parser["catalog"]
    if int(head.get("schema", "0")) != SCHEMA:
        raise ValueError(f"{source}: unsupported schema {head.get('schema')!r}")
    if kind and head.get("kind") != kind:
        raise ValueError(f"{source}: expected a {kind!r} catalog, found {head.get('kind')!r}")
    return parser


def record_names(parser: configparser.ConfigParser) -> list[str]:
    return [s for s in parser.sections() if s != "catalog"]
