"""String-diagram lambda calculus: parse, typecheck, run, and cross-check
programs against a finite order-theoretic model.

The heavy lifting lives in the compiled module ``_eclnl``; this package
turns its JSON-text answers into dicts and keeps the argument conventions
(signature as a JSON string or a path, fuel as a step budget) in one place.
"""

from __future__ import annotations

import json
import os
from typing import Any, Optional, Tuple

try:
    from . import _eclnl as _core
except ImportError:  # editable / in-tree builds put the module on sys.path
    import _eclnl as _core  # type: ignore[no-redef]

ParseError = _core.ParseError
TypeError_ = _core.TypeError
SignatureError = _core.SignatureError

__all__ = [
    "ParseError",
    "TypeError_",
    "SignatureError",
    "check",
    "demo_signature",
    "emit",
    "format_term",
    "oracle",
    "run",
]

DEFAULT_FUEL = 100_000


def _signature_json(signature: Optional[str]) -> Optional[str]:
    """Accepts None, a JSON string, or a path to a JSON file."""
    if signature is None:
        return None
    stripped = signature.lstrip()
    if stripped.startswith("{"):
        return signature
    with open(os.fspath(signature), "r", encoding="utf-8") as fh:
        return fh.read()


def demo_signature() -> dict:
    """The built-in demo signature (qubit wires: h, cnot, new)."""
    return json.loads(_core.demo_signature_json())


def format_term(source: str, signature: Optional[str] = None) -> str:
    """Parse a program and print its desugared term back as source text."""
    return _core.format_term(source, _signature_json(signature))


def check(source: str, signature: Optional[str] = None) -> str:
    """Typecheck a closed program; returns its printed type.

    Raises ParseError or TypeError_ with a message carrying the source span.
    """
    return _core.check(source, _signature_json(signature))


def run(
    source: str,
    signature: Optional[str] = None,
    fuel: int = DEFAULT_FUEL,
) -> dict:
    """Typecheck and evaluate a program.

    Returns the run report as a dict: type, outcome ("value" |
    "error" | "fuel_exhausted"), steps, the value or error, the ambient
    diagram, and any boxed diagrams inside the value.
    """
    return json.loads(_core.run_json(source, _signature_json(signature), fuel))


def oracle(
    source: str,
    signature: Optional[str] = None,
    fuel: int = DEFAULT_FUEL,
) -> Tuple[str, str, str]:
    """Compare the evaluator against the finite model.

    Returns (soundness, adequacy, detail) where soundness is one of
    "pass" | "fail" | "inconclusive" and adequacy is one of "pass" |
    "pass-presumed-divergent" | "fail" | "unsupported".
    """
    return tuple(_core.oracle(source, _signature_json(signature), fuel))


def emit(
    source: str,
    signature: Optional[str] = None,
    fuel: int = DEFAULT_FUEL,
    format: str = "json",
) -> Any:
    """Run a program and render its first boxed diagram (or the ambient
    diagram). ``format="json"`` returns a dict, ``format="dot"`` a string.
    """
    text = _core.emit(source, _signature_json(signature), fuel, format)
    return json.loads(text) if format == "json" else text
