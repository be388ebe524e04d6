"""Group files, the bundled catalog, and JSON helpers.

A group file looks like::

    {"name": "s4", "degree": 4,
     "generators": ["(1 2)", "(1 2 3 4)"],
     "subgroups": {"cyclic4": ["(1 2 3 4)"], "klein": ["(1 2)(3 4)", "(1 3)(2 4)"]}}

Points are 1-indexed.  Catalog files add ``h1``, ``h2``, ``default_gens``
and ``expected`` (``{"gassmann": bool, "conjugate": bool}``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .perm_core import DEFAULT_CAP, closure, parse_cycles, subgroup_from_permutations


class GroupFileError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    name: str
    degree: int
    generators: tuple
    subgroups: dict
    h1: str | None = None
    h2: str | None = None
    default_gens: tuple = ()
    expected: dict = field(default_factory=dict)
    description: str = ""

    def build(self, cap=DEFAULT_CAP):
        """Enumerate the group and its labelled subgroups."""
        perms = [parse_cycles(c, self.degree) for c in self.generators]
        G = closure(perms, cap=cap)
        subs = {}
        for label, gens in self.subgroups.items():
            ps = [parse_cycles(c, self.degree) for c in gens]
            missing = [c for c, p in zip(gens, ps) if p not in G]
            if missing:
                raise GroupFileError(f"subgroup {label!r}: {missing} not in the group")
            subs[label] = subgroup_from_permutations(G, ps)
        return G, subs

    def subgroup_label(self, label, fallback):
        label = label or fallback
        if label is None:
            raise GroupFileError("no subgroup label given and the file has no default")
        if label not in self.subgroups:
            raise GroupFileError(
                f"unknown subgroup label {label!r}; known: {sorted(self.subgroups)}"
            )
        return label


def group_spec_from_dict(d):
    try:
        degree = int(d["degree"])
        generators = tuple(d["generators"])
    except (KeyError, TypeError, ValueError) as exc:
        raise GroupFileError(f"group file needs 'degree' and 'generators': {exc}") from exc
    if not generators:
        raise GroupFileError("empty generator list")
    subgroups = {str(k): tuple(v) for k, v in d.get("subgroups", {}).items()}
    return GroupSpec(
        name=str(d.get("name", "group")),
        degree=degree,
        generators=generators,
        subgroups=subgroups,
        h1=d.get("h1"),
        h2=d.get("h2"),
        default_gens=tuple(d.get("default_gens", ())),
        expected=dict(d.get("expected", {})),
        description=str(d.get("description", "")),
    )


def load_group_file(path):
    """Read a group file; a bare catalog name is accepted as well."""
    p = Path(path)
    if not p.exists() and str(path) in catalog_names():
        return load_catalog_entry(str(path))
    try:
        d = json.loads(p.read_text())
    except OSError as exc:
        raise GroupFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise GroupFileError(f"{path} is not valid JSON: {exc}") from exc
    return group_spec_from_dict(d)


def split_generator_list(text):
    """Split ``"(1 2)(3 4),(1 3)"`` at commas outside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


# ---------------------------------------------------------------------------
# catalog


def _catalog_dir():
    return resources.files("sunada") / "catalog"


def catalog_names():
    return sorted(p.name[:-5] for p in _catalog_dir().iterdir() if p.name.endswith(".json"))


def load_catalog_entry(name):
    path = _catalog_dir() / f"{name}.json"
    if not path.is_file():
        raise GroupFileError(f"no catalog entry named {name!r}")
    return group_spec_from_dict(json.loads(path.read_text()))


def catalog_path(name):
    """Filesystem path of a bundled catalog file."""
    return Path(str(_catalog_dir() / f"{name}.json"))


def dumps(obj):
    """Deterministic JSON text used for every report."""
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
