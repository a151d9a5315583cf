"""The theory catalogue, addressable by name."""

from __future__ import annotations

from typing import Optional

from ..errors import TableError, TheoryCombError
from ..theory import TheoryHandle
from .equality import teq_handle, tinf_handle, tinfh_handle, tle_handle, tlen_handle
from .orbit import tleorb_handle, torb2_handle
from .params import OracleTables, default_tables
from .uf import tf_handle, tg_handle

THEORY_NAMES = ("teq", "tle", "tinf", "tf", "tg", "torb2", "tleorb", "tinfh", "tlen:<n>")


def _pick(tables: Optional[OracleTables], attr: str):
    value = getattr(tables, attr) if tables is not None else None
    return value if value is not None else getattr(default_tables(), attr)


def make_theory(name: str, tables: Optional[OracleTables] = None) -> TheoryHandle:
    """Build a handle; parameter tables default to the built-in ones."""
    if name == "teq":
        return teq_handle()
    if name == "tle":
        return tle_handle(_pick(tables, "F"))
    if name == "tinf":
        return tinf_handle()
    if name == "tf":
        return tf_handle(_pick(tables, "f"))
    if name == "tg":
        return tg_handle(_pick(tables, "g"))
    if name == "torb2":
        return torb2_handle()
    if name == "tleorb":
        return tleorb_handle(_pick(tables, "F"))
    if name == "tinfh":
        return tinfh_handle(_pick(tables, "h"))
    if name.startswith("tlen:"):
        arg = name[len("tlen:"):]
        if not arg.isdigit() or int(arg) < 1:
            raise TheoryCombError(f"tlen needs a positive bound, got {arg!r}")
        return tlen_handle(int(arg))
    raise TheoryCombError(f"unknown theory {name!r}; expected one of {', '.join(THEORY_NAMES)}")


__all__ = ["make_theory", "THEORY_NAMES", "TableError"]
