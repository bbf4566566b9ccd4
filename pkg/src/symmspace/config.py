"""Triple configuration files and the JSON matrix format.

A triple file looks like::

    {"id": "so5-inner", "family": "SO", "n": 5,
     "involution": {"kind": "Inner", "s": [[1, 0, ...], ...]}}

Matrices are row-major nested arrays. Entries are plain numbers, ``[re, im]``
pairs, or (on the command line only) complex literals such as ``0.8i``.
"""
import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import SymmSpaceError
from .involution import Involution, split_algebra
from .liegroup import GroupSpec
from .numkernel import REAL_COLLAPSE_TOL

__all__ = [
    "ConfigError", "TripleConfig", "SHIPPED_TRIPLES", "builtin_names",
    "load_builtin", "load_triple", "parse_matrix", "parse_matrix_text",
    "matrix_to_json",
]

# the triples every verification suite is run against
SHIPPED_TRIPLES = ("sl2", "sl3", "su2", "su3", "so5-inner")


class ConfigError(SymmSpaceError, ValueError):
    """Malformed triple configuration or matrix literal."""


def _entry(value):
    if isinstance(value, bool):
        raise ConfigError(f"invalid matrix entry {value!r}")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
        return complex(value[0], value[1])
    if isinstance(value, str):
        try:
            return complex(value.strip().replace("i", "j").replace(" ", ""))
        except ValueError:
            pass
    raise ConfigError(f"invalid matrix entry {value!r}")


def parse_matrix(data):
    """Nested rows of entries -> ndarray (real when every entry is real)."""
    if not isinstance(data, (list, tuple)) or not data:
        raise ConfigError("matrix must be a non-empty list of rows")
    rows = []
    for row in data:
        if not isinstance(row, (list, tuple)) or not row:
            raise ConfigError("matrix rows must be non-empty lists")
        rows.append([_entry(v) for v in row])
    if len({len(r) for r in rows}) != 1:
        raise ConfigError("matrix rows have different lengths")
    m = np.array(rows, dtype=complex)
    if not np.all(np.isfinite(m)):
        raise ConfigError("matrix has non-finite entries")
    if np.all(m.imag == 0):
        return m.real.copy()
    return m


_TOKEN = re.compile(r"[^\[\],\s]+")


def parse_matrix_text(text):
    """Parse JSON, or JSON-like text with bare complex literals (``0.8i``)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        quoted = _TOKEN.sub(lambda mo: json.dumps(mo.group(0)), text)
        try:
            data = json.loads(quoted)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"cannot parse matrix literal: {exc}") from None
    return parse_matrix(data)


def matrix_to_json(m, tol=REAL_COLLAPSE_TOL):
    """Nested [re, im] pairs, or plain reals when every |imag| <= tol."""
    m = np.asarray(m)
    if not np.iscomplexobj(m) or np.all(np.abs(m.imag) <= tol):
        return [[float(v) for v in row] for row in np.real(m)]
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]


@dataclass(frozen=True)
class TripleConfig:
    family: str
    n: int
    involution: dict
    signature: tuple = None
    id: str = ""
    description: str = ""

    @classmethod
    def from_dict(cls, data, default_id=""):
        if not isinstance(data, dict):
            raise ConfigError("triple config must be a JSON object")
        missing = [k for k in ("family", "n", "involution") if k not in data]
        if missing:
            raise ConfigError(f"triple config is missing {', '.join(missing)}")
        inv = data["involution"]
        if not isinstance(inv, dict) or "kind" not in inv:
            raise ConfigError("involution must be an object with a 'kind'")
        sig = data.get("signature")
        return cls(family=data["family"], n=data["n"], involution=dict(inv),
                   signature=tuple(sig) if sig is not None else None,
                   id=str(data.get("id", default_id)),
                   description=str(data.get("description", "")))

    def build(self):
        """Deserialize and validate into a SymmetricTriple."""
        try:
            spec = GroupSpec(self.family, self.n, self.signature)
            s = self.involution.get("s")
            inv = Involution(self.involution["kind"],
                             None if s is None else parse_matrix(s))
            return split_algebra(spec, inv, triple_id=self.id)
        except ConfigError:
            raise
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"invalid triple config: {exc}") from exc


def _triples_dir():
    return resources.files("symmspace") / "triples"


def builtin_names():
    return sorted(p.name[:-5] for p in _triples_dir().iterdir() if p.name.endswith(".json"))


@lru_cache(maxsize=None)
def load_builtin(name):
    path = _triples_dir() / f"{name}.json"
    if not path.is_file():
        raise ConfigError(f"no built-in triple named {name!r}")
    return TripleConfig.from_dict(json.loads(path.read_text()), default_id=name).build()


def load_triple(ref):
    """Load a triple from a file path, falling back to the built-in catalog.

    ``ref`` may be a path, a built-in file name such as ``su2.json``, or a
    bare built-in name such as ``su2``.
    """
    path = Path(ref)
    if path.is_file():
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from None
        return TripleConfig.from_dict(data, default_id=path.stem).build()
    name = path.name[:-5] if path.name.endswith(".json") else path.name
    if name in builtin_names():
        return load_builtin(name)
    raise ConfigError(f"triple file {ref!r} not found")
