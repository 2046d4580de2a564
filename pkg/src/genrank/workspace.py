"""
Workspace files: a JSON document holding a poset or finite category, an
optional module over it and an optional subposet embedding.

    {
      "poset": {"elements": [...], "covers": [["a", "b"], ...]},
      "category": {"objects": [...], "morphisms": [["f", "a", "b"], ...],
                   "identities": {"a": "id_a"}, "compose": [["g", "f", "h"], ...]},
      "module": {"field": "rational", "dims": {...}, "maps": {"a<b": [[...]]}},
      "embedding": {"carrier": [...], "relations": [["a", "b"], ...], "full": false}
    }

Exactly one of ``poset``/``category`` is present. Poset maps are keyed
``"a<b"`` by cover, category maps by morphism id. Rational entries that are
not integers are written ``"a/b"``. ``emit`` writes the canonical layout,
and ``emit(parse(text)) == text`` for canonical text.
"""

import json
import warnings
from dataclasses import dataclass
from typing import Optional

from genrank.errors import FunctorialityError, InputError, RedundantRelationWarning
from genrank.exactla import Field, Matrix
from genrank.fincat import FinCategory
from genrank.pmod import PersistenceModule, generator_keys
from genrank.poset import Poset, SubposetEmbedding, poset_from_covers

BLOCKS = ("poset", "category", "module", "embedding")


@dataclass
class Workspace:
    poset: Optional[Poset] = None
    category: Optional[FinCategory] = None
    module: Optional[PersistenceModule] = None
    embedding: Optional[SubposetEmbedding] = None

    @property
    def index(self):
        return self.poset if self.poset is not None else self.category

    def require(self, *blocks):
        for b in blocks:
            if getattr(self, b) is None:
                raise InputError("workspace has no %s block" % b)
        return self


# --- locating keys in the source text -------------------------------------------


class _Locator(object):
    def __init__(self, text, path):
        self.lines = text.splitlines()
        self.path = path

    def line(self, *keys):
        """1-based line of the last key in ``keys``, searched in sequence."""
        row = 0
        found = None
        for k in keys:
            needle = json.dumps(str(k))
            for i in range(row, len(self.lines)):
                if needle in self.lines[i]:
                    found, row = i, i
                    break
            else:
                break
        return None if found is None else found + 1

    def where(self, *keys):
        ln = self.line(*keys)
        if ln is None:
            return self.path
        return "%s:%d" % (self.path, ln)


def _fail(loc, keys, msg):
    raise InputError(msg, location=loc.where(*keys))


def _str_list(loc, keys, value, what):
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        _fail(loc, keys, "%s must be a list of strings" % what)
    for x in value:
        if "<" in x:
            _fail(loc, keys + (x,), "id %r may not contain '<'" % x)
    return value


def _pairs(loc, keys, value, what, width=2):
    if not isinstance(value, list):
        _fail(loc, keys, "%s must be a list" % what)
    out = []
    for item in value:
        if (not isinstance(item, list) or len(item) != width
                or not all(isinstance(x, str) for x in item)):
            _fail(loc, keys, "%s entries must be lists of %d strings, got %r" % (what, width, item))
        out.append(tuple(item))
    return out


def _rewrap(loc, keys, fn, *args, **kw):
    """Call ``fn`` and anchor any ``InputError`` at ``keys``."""
    try:
        return fn(*args, **kw)
    except FunctorialityError as e:
        where = loc.where(*keys)
        raise FunctorialityError(e.message, square=e.square, location=where)
    except InputError as e:
        raise InputError(e.message, location=loc.where(*keys))


# --- parsing --------------------------------------------------------------------


def parse(text, path="<input>", field=None):
    """Parse and validate a workspace. ``field`` overrides the module's field."""
    loc = _Locator(text, path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError("malformed JSON: %s" % e.msg, location="%s:%d" % (path, e.lineno))
    if not isinstance(doc, dict):
        raise InputError("top level must be an object", location="%s:1" % path)
    for k in doc:
        if k not in BLOCKS:
            _fail(loc, (k,), "unknown block %r" % k)
    if ("poset" in doc) == ("category" in doc):
        raise InputError("exactly one of 'poset' and 'category' is required",
                         location="%s:1" % path)
    ws = Workspace()
    if "poset" in doc:
        ws.poset = _parse_poset(loc, doc["poset"])
    else:
        ws.category = _parse_category(loc, doc["category"])
    if "module" in doc:
        ws.module = _parse_module(loc, doc["module"], ws.index, field)
    if "embedding" in doc:
        if ws.poset is None:
            _fail(loc, ("embedding",), "embedding needs a poset block")
        ws.embedding = _parse_embedding(loc, doc["embedding"], ws.poset)
    return ws


def load(path, field=None):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError("cannot read %s: %s" % (path, e.strerror))
    return parse(text, path=str(path), field=field)


def _check_keys(loc, block, value, required, optional=()):
    if not isinstance(value, dict):
        _fail(loc, (block,), "%s block must be an object" % block)
    for k in required:
        if k not in value:
            _fail(loc, (block,), "%s block is missing %r" % (block, k))
    for k in value:
        if k not in required and k not in optional:
            _fail(loc, (block, k), "unknown key %r in %s block" % (k, block))


def _parse_poset(loc, b):
    _check_keys(loc, "poset", b, ("elements", "covers"))
    els = _str_list(loc, ("poset", "elements"), b["elements"], "elements")
    covers = _pairs(loc, ("poset", "covers"), b["covers"], "covers")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", RedundantRelationWarning)
        P = _rewrap(loc, ("poset", "covers"), poset_from_covers, els, covers)
    for w in caught:
        warnings.warn("%s: %s" % (loc.where("poset", "covers"), w.message),
                      RedundantRelationWarning, stacklevel=2)
    return P


def _parse_category(loc, b):
    _check_keys(loc, "category", b, ("objects", "morphisms", "compose"), ("identities",))
    objs = _str_list(loc, ("category", "objects"), b["objects"], "objects")
    morphs = _pairs(loc, ("category", "morphisms"), b["morphisms"], "morphisms", width=3)
    for m, _, _ in morphs:
        if "<" in m:
            _fail(loc, ("category", "morphisms", m), "id %r may not contain '<'" % m)
    ids = b.get("identities")
    if ids is None:
        ids = {o: "id_%s" % o for o in objs}
    elif not isinstance(ids, dict):
        _fail(loc, ("category", "identities"), "identities must be an object")
    listed = {m for m, _, _ in morphs}
    morphs = [(ids[o], o, o) for o in objs if o in ids and ids[o] not in listed] + morphs
    comp = _pairs(loc, ("category", "compose"), b["compose"], "compose", width=3)
    table = {(g, f): h for g, f, h in comp}
    return _rewrap(loc, ("category",), FinCategory, objs, morphs, ids, table)


def _parse_module(loc, b, index, field_override):
    _check_keys(loc, "module", b, ("field", "dims", "maps"))
    field = field_override or _rewrap(loc, ("module", "field"), Field.parse, b["field"])
    dims = b["dims"]
    if not isinstance(dims, dict):
        _fail(loc, ("module", "dims"), "dims must be an object")
    maps_in = b["maps"]
    if not isinstance(maps_in, dict):
        _fail(loc, ("module", "maps"), "maps must be an object")
    keys = {}
    for key, s, t in generator_keys(index):
        keys[_key_str(key)] = (key, s, t)
    maps = {}
    for name, lit in maps_in.items():
        if name not in keys:
            _fail(loc, ("module", "maps", name), "map %r is not a cover / generating morphism" % name)
        key, s, t = keys[name]
        for o in (s, t):
            if not isinstance(dims.get(o), int) or isinstance(dims.get(o), bool):
                _fail(loc, ("module", "dims"), "bad or missing dimension for %r" % o)
        maps[key] = _rewrap(loc, ("module", "maps", name), Matrix.from_literal,
                            field, lit, dims[t], dims[s])
    missing = [n for n in keys if n not in maps_in]
    if missing:
        _fail(loc, ("module", "maps"), "missing map for %s" % missing[0])
    return _rewrap(loc, ("module",), PersistenceModule, index, field, dims, maps)


def _parse_embedding(loc, b, P):
    _check_keys(loc, "embedding", b, ("carrier",), ("relations", "full"))
    carrier = _str_list(loc, ("embedding", "carrier"), b["carrier"], "carrier")
    full = b.get("full", "relations" not in b)
    if not isinstance(full, bool):
        _fail(loc, ("embedding", "full"), "full must be true or false")
    if full:
        if "relations" in b:
            _fail(loc, ("embedding", "relations"), "a full embedding takes no relations")
        return _rewrap(loc, ("embedding",), SubposetEmbedding, P, carrier)
    rels = _pairs(loc, ("embedding", "relations"), b.get("relations", []), "relations")
    return _rewrap(loc, ("embedding",), SubposetEmbedding, P, carrier, rels)


def _key_str(key):
    if isinstance(key, tuple):
        return "%s<%s" % key
    return key


# --- canonical emission -----------------------------------------------------------


def _j(x):
    return json.dumps(x, ensure_ascii=False)


def _obj_lines(items, indent):
    pad = " " * indent
    body = [pad + "%s: %s" % (_j(k), v) for k, v in items]
    return "{\n" + ",\n".join(body) + "\n" + " " * (indent - 2) + "}"


def _inline_list(xs):
    return "[" + ", ".join(_j(x) for x in xs) + "]"


def _inline_obj(d):
    return "{" + ", ".join("%s: %s" % (_j(k), _j(v)) for k, v in d.items()) + "}"


def _matrix(m):
    lit = m.to_literal()
    return "[" + ", ".join(_inline_list(row) for row in lit) + "]"


def emit_poset(P):
    return _obj_lines([("elements", _inline_list(P.elements)),
                       ("covers", _inline_list([list(c) for c in P.covers]))], 4)


def emit_category(C):
    morphs = [[m, C.src[m], C.tgt[m]] for m in C.morphisms if not C.is_identity(m)]
    comp = [[g, f, C.compose(g, f)] for f in C.non_identity()
            for g in C.non_identity() if C.src[g] == C.tgt[f]]
    return _obj_lines([("objects", _inline_list(C.objects)),
                       ("morphisms", _inline_list(morphs)),
                       ("identities", _inline_obj({o: C.identities[o] for o in C.objects})),
                       ("compose", _inline_list(comp))], 4)


def emit_module(M):
    maps = [(_key_str(k), _matrix(m)) for k, _, _, m in M.generators()]
    maps_txt = _obj_lines(maps, 6) if maps else "{}"
    return _obj_lines([("field", _j(str(M.field))),
                       ("dims", _inline_obj({o: M.dims[o] for o in M.objects})),
                       ("maps", maps_txt)], 4)


def emit_embedding(E):
    items = [("carrier", _inline_list(E.carrier))]
    if E.full:
        items.append(("full", "true"))
    else:
        items.append(("relations", _inline_list([list(c) for c in E.source.covers])))
        items.append(("full", "false"))
    return _obj_lines(items, 4)


def emit(ws):
    """Canonical text of a workspace."""
    items = []
    if ws.poset is not None:
        items.append(("poset", emit_poset(ws.poset)))
    if ws.category is not None:
        items.append(("category", emit_category(ws.category)))
    if ws.module is not None:
        items.append(("module", emit_module(ws.module)))
    if ws.embedding is not None:
        items.append(("embedding", emit_embedding(ws.embedding)))
    return _obj_lines(items, 2) + "\n"


def save(ws, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit(ws))
