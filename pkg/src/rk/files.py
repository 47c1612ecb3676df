"""Declarative description files (YAML key-value trees) and JSON reports.

Every loader has a matching serializer and the composition
parse -> serialize -> parse is the identity on the data it carries.
Group references inside parameter and endoscopy files accept either a
preset name or a path to a group file.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Dict, Optional

import yaml

from .disconnected import DisconnectedGroupDatum
from .endoscopy import EndoscopicDatum
from .lattice import mat
from .params import Parameter
from .rootdata import BasedRootDatum, GaloisAction, ReductiveGroup


def _as_matrix(rows):
    return mat([[int(x) for x in row] for row in rows])


def _as_vectors(rows):
    return tuple(tuple(int(x) for x in row) for row in rows)


def load_tree(path: str) -> Dict:
    with open(path, "r", encoding="utf-8") as fh:
        data = yaml.safe_load(fh)
    if not isinstance(data, dict) or "kind" not in data:
        raise ValueError("%s: expected a mapping with a 'kind' entry" % path)
    return data


def dump_tree(tree: Dict, path: Optional[str] = None) -> str:
    text = yaml.safe_dump(tree, sort_keys=True, default_flow_style=None)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


# ---------------------------------------------------------------------------
# groups

def group_from_tree(tree: Dict) -> ReductiveGroup:
    if tree.get("kind") != "group":
        raise ValueError("not a group description")
    datum = BasedRootDatum(
        int(tree["rank"]),
        _as_vectors(tree.get("roots", [])),
        _as_vectors(tree.get("coroots", [])),
        tuple(int(i) for i in tree.get("simple", [])),
        str(tree.get("name", "")))
    galois = None
    if tree.get("galois"):
        galois = GaloisAction(datum, tuple(_as_matrix(g)
                                           for g in tree["galois"]))
    return ReductiveGroup(datum, galois, name=str(tree.get("name", "")))


def group_to_tree(group: ReductiveGroup) -> Dict:
    tree = {
        "kind": "group",
        "name": group.name,
        "rank": group.datum.rank,
        "roots": [list(r) for r in group.datum.roots],
        "coroots": [list(c) for c in group.datum.coroots],
        "simple": list(group.datum.simple_indices),
    }
    if not group.galois.is_trivial():
        tree["galois"] = [[list(row) for row in g]
                          for g in group.galois.char_generators]
    return tree


def resolve_group(ref: str) -> ReductiveGroup:
    """A preset name, or a path to a group description file."""
    from . import presets
    try:
        return presets.group(ref)
    except KeyError:
        pass
    if os.path.exists(ref):
        return group_from_tree(load_tree(ref))
    raise ValueError("unknown group %r (not a preset, not a file)" % ref)


# ---------------------------------------------------------------------------
# parameters

def parameter_from_tree(tree: Dict) -> Parameter:
    if tree.get("kind") != "parameter":
        raise ValueError("not a parameter description")
    group = resolve_group(str(tree["group"]))
    return Parameter(
        group=group,
        minimal_levi=frozenset(int(i) for i in tree.get("minimal_levi", [])),
        sphi_ambient=_as_vectors(tree.get("sphi_roots", [])),
        positive_ambient=_as_vectors(tree.get("sphi_positive", [])),
        r_phi_words=tuple(tuple(int(i) for i in w)
                          for w in tree.get("r_phi_words", [])),
        label=str(tree.get("label", "")),
        tempered=bool(tree.get("tempered", True)))


def parameter_to_tree(param: Parameter, group_ref: str) -> Dict:
    amb = []
    pos = []
    for r in param.roots:
        for a in param.ambient_of_root[r]:
            amb.append(list(a))
            if r in set(param.positives):
                pos.append(list(a))
    return {
        "kind": "parameter",
        "group": group_ref,
        "label": param.label,
        "minimal_levi": sorted(param.minimal_levi),
        "sphi_roots": amb,
        "sphi_positive": pos,
        "r_phi_words": [list(param.group.relative.word(r))
                        for r in param.r_generators],
        "tempered": param.tempered,
    }


def resolve_parameter(ref: str):
    from . import presets
    try:
        return presets.parameter(ref)
    except KeyError:
        pass
    if os.path.exists(ref):
        return parameter_from_tree(load_tree(ref))
    raise ValueError("unknown parameter %r (not a preset, not a file)" % ref)


# ---------------------------------------------------------------------------
# endoscopic data

def endoscopy_from_tree(tree: Dict) -> EndoscopicDatum:
    if tree.get("kind") != "endoscopy":
        raise ValueError("not an endoscopy description")
    group = resolve_group(str(tree["group"]))
    s = tuple(Fraction(str(x)) for x in tree["s"])
    return EndoscopicDatum(group, s, label=str(tree.get("label", "")))


def endoscopy_to_tree(endo: EndoscopicDatum, group_ref: str) -> Dict:
    return {
        "kind": "endoscopy",
        "group": group_ref,
        "label": endo.label,
        "s": [str(x) for x in endo.s],
    }


def resolve_endoscopy(ref: str):
    from . import presets
    try:
        return presets.endoscopy(ref)
    except KeyError:
        pass
    if os.path.exists(ref):
        return endoscopy_from_tree(load_tree(ref))
    raise ValueError("unknown endoscopy datum %r (not a preset, not a file)"
                     % ref)


# ---------------------------------------------------------------------------
# disconnected groups

def disconnected_from_tree(tree: Dict) -> DisconnectedGroupDatum:
    if tree.get("kind") != "disconnected":
        raise ValueError("not a disconnected-group description")
    datum = BasedRootDatum(
        int(tree["rank"]),
        _as_vectors(tree.get("roots", [])),
        _as_vectors(tree.get("coroots", [])),
        tuple(int(i) for i in tree.get("simple", [])),
        str(tree.get("name", "")))
    gens = tuple(_as_matrix(g) for g in tree.get("component_generators", []))
    holder = DisconnectedGroupDatum(datum, gens, name=str(tree.get("name", "")))
    cocycle_rows = tree.get("cocycle", [])
    if cocycle_rows:
        table = {}
        for row in cocycle_rows:
            wa, wb, expo = row
            a = _word_to_element(holder, wa)
            b = _word_to_element(holder, wb)
            table[(a, b)] = Fraction(str(expo))
        holder = DisconnectedGroupDatum(datum, gens, cocycle=table,
                                        name=str(tree.get("name", "")))
    return holder


def _word_to_element(holder: DisconnectedGroupDatum, word):
    from .lattice import mat_identity, mat_mul
    m = mat_identity(holder.component.rank)
    for i in word:
        m = mat_mul(m, holder.declared_generators[int(i)])
    return m


def disconnected_to_tree(holder: DisconnectedGroupDatum) -> Dict:
    return {
        "kind": "disconnected",
        "name": holder.name,
        "rank": holder.component.rank,
        "roots": [list(r) for r in holder.component.roots],
        "coroots": [list(c) for c in holder.component.coroots],
        "simple": list(holder.component.simple_indices),
        "component_generators": [[list(row) for row in g]
                                 for g in holder.declared_generators],
    }


def resolve_disconnected(ref: str):
    from . import presets
    try:
        return presets.disconnected(ref)
    except KeyError:
        pass
    if os.path.exists(ref):
        return disconnected_from_tree(load_tree(ref))
    raise ValueError("unknown disconnected group %r" % ref)
