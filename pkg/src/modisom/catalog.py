"""Built-in groups and the JSON presentation file format.

File format::

    {"name": "heisenberg_3", "prime": 3, "ngens": 3,
     "powers": [[], [], []],
     "commutators": [{"j": 2, "i": 1, "word": [[3, 1]]}],
     "provenance": "...", "expected_facts": [["order", 27]]}

``powers[i]`` is the normal form of ``g_(i+1)^p``; a word is a list of
``[generator (1-based), exponent]`` pairs with strictly increasing
generators and exponents in ``[1, p)``.  Omitted commutators are trivial.
``provenance`` and ``expected_facts`` are optional.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from .errors import InputError
from .pcgroup import PcPresentation, consistency_check, is_prime
from .pcgroup import subgroups as sg


class ParseError(InputError):
    """Malformed presentation file."""


class ValidationError(InputError):
    """Well-formed file describing an invalid or inconsistent presentation."""


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    p: int
    presentation: PcPresentation
    provenance: str = ""
    expected_facts: tuple[tuple[str, object], ...] = ()


def _pres(p, n, name, powers=None, comms=None):
    return PcPresentation.from_relations(p, n, powers=powers or {}, commutators=comms or {}, name=name)


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise InputError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            if q != 1:
                raise InputError("parameter is not a prime power")
            return p, k
    raise AssertionError


# --- families ------------------------------------------------------------

def _cyclic(q):
    p, n = _prime_power(q)
    return _pres(p, n, f"cyclic_{q}", powers={i: [(i + 1, 1)] for i in range(1, n)}), f"C_{q}"


def _elem_abelian(q):
    p, n = _prime_power(q)
    return _pres(p, n, f"elem_abelian_{q}"), f"C_{p}^{n}"


def _heisenberg(p):
    return _pres(p, 3, f"heisenberg_{p}", comms={(2, 1): [(3, 1)]}), "(C_p x C_p) : C_p of exponent p"


def _modular(p):
    # a = g1 of order p^2, b = g2, [a, b] = a^p, so [b, a] = g3^(p-1)
    return (
        _pres(p, 3, f"modular_{p}", powers={1: [(3, 1)]}, comms={(2, 1): [(3, p - 1)]}),
        "C_{p^2} : C_p with [a, b] = a^p",
    )


def _c_p2_x_cp(p):
    return _pres(p, 3, f"c_p2_x_cp_{p}", powers={1: [(3, 1)]}), "C_{p^2} x C_p"


def _maxclass_p4(p):
    return _pres(p, 4, f"maxclass_p4_{p}", comms={(2, 1): [(3, 1)], (3, 1): [(4, 1)]}), "class 3, order p^4"


def _heisenberg_x_cp(p):
    return _pres(p, 4, f"heisenberg_x_cp_{p}", comms={(2, 1): [(3, 1)]}), "Heisenberg x C_p"


def _maxclass_p4_x_cp(p):
    return (
        _pres(p, 5, f"maxclass_p4_x_cp_{p}", comms={(2, 1): [(3, 1)], (3, 1): [(4, 1)]}),
        "class-3 group of order p^4 times C_p; |G:Z| = p^3",
    )


def _extraspecial_p5(p):
    return (
        _pres(p, 5, f"extraspecial_p5_{p}", comms={(2, 1): [(5, 1)], (4, 3): [(5, 1)]}),
        "extraspecial p^(1+4), central product of two Heisenberg groups",
    )


def _free_class2_rank3(p):
    return (
        _pres(p, 6, f"free_class2_rank3_{p}", comms={(2, 1): [(4, 1)], (3, 1): [(5, 1)], (3, 2): [(6, 1)]}),
        "free 3-generator class-2 exponent-p group; |G:Z| = p^3",
    )


def _free_class3_rank2(p):
    return (
        _pres(p, 5, f"free_class3_rank2_{p}", comms={(2, 1): [(3, 1)], (3, 1): [(4, 1)], (3, 2): [(5, 1)]}),
        "2-generator class-3 group of order p^5 with gamma_3 of rank 2; |G:Z| = p^3",
    )


# Order-p^5 analogues of the 5^7 examples: a^p = d (d^2 for the third),
# e = [b, a], and [e, a], [e, b] take the roles of d^5 and c^5.
def _mini(variant):
    def build(p):
        comms = {(2, 1): [(3, 1)]}
        if variant == 1:
            comms[(3, 1)] = [(4, 1)]
            comms[(3, 2)] = [(5, 1)]
        else:
            comms[(3, 1)] = [(5, 1)]
            # for the third, a^p = d^2 so d = g4^h with 2h = 1 mod p
            comms[(3, 2)] = [(4, 1 if variant == 2 else pow(2, -1, p))]
        return (
            _pres(p, 5, f"mini_{variant}_{p}", powers={1: [(4, 1)]}, comms=comms),
            f"order-p^5 analogue {variant} of the 5^7 family; |G:Z| = p^3",
        )
    return build


# The three groups of order 5^7 with center C_25 x C_25 of index 5^3.
# Pc generators g1..g7 = a, b, e = [b, a], d = a^5, c, d^5, c^5 (for the
# third group g4 = a^5 = d^2 and g6 = a^25).  Derived by hand from the finite
# presentations and checked in the tests: the defining relations hold for
# a = g1, b = g2, c = g5 and the given d, and a, b, c generate.
_FIVE_SEVEN = {
    "G5_7_1599": ({(2, 1): [(3, 1)], (3, 1): [(6, 1)], (3, 2): [(7, 1)]}, "[[b,a],a] = d^5, [[b,a],b] = c^5, a^5 = d"),
    "G5_7_1734": ({(2, 1): [(3, 1)], (3, 1): [(7, 1)], (3, 2): [(6, 1)]}, "[[b,a],a] = c^5, [[b,a],b] = d^5, a^5 = d"),
    "G5_7_1766": ({(2, 1): [(3, 1)], (3, 1): [(7, 1)], (3, 2): [(6, 3)]}, "[[b,a],a] = c^5, [[b,a],b] = d^5, a^5 = d^2"),
}

_FIVE_SEVEN_FACTS = (("order", 5**7), ("center_invariants", (25, 25)), ("generator_rank", 3), ("class", 3))


def _five_seven(name):
    comms, rel = _FIVE_SEVEN[name]

    def build(p):
        if p != 5:
            raise InputError(f"{name} exists only for p = 5")
        pres = _pres(5, 7, name, powers={1: [(4, 1)], 4: [(6, 1)], 5: [(7, 1)]}, comms=comms)
        return pres, f"order 5^7 example with center of index p^3: {rel}"
    return build


# name -> (builder, parameter kind, default parameter, order exponent or None)
_REGISTRY = {
    "cyclic": (_cyclic, "order", 27, None),
    "elem_abelian": (_elem_abelian, "order", 27, None),
    "heisenberg": (_heisenberg, "prime", 3, 3),
    "modular": (_modular, "prime", 3, 3),
    "c_p2_x_cp": (_c_p2_x_cp, "prime", 3, 3),
    "maxclass_p4": (_maxclass_p4, "prime", 3, 4),
    "heisenberg_x_cp": (_heisenberg_x_cp, "prime", 3, 4),
    "maxclass_p4_x_cp": (_maxclass_p4_x_cp, "prime", 3, 5),
    "extraspecial_p5": (_extraspecial_p5, "prime", 3, 5),
    "free_class3_rank2": (_free_class3_rank2, "prime", 3, 5),
    "free_class2_rank3": (_free_class2_rank3, "prime", 3, 6),
    "mini_1": (_mini(1), "prime", 3, 5),
    "mini_2": (_mini(2), "prime", 3, 5),
    "mini_3": (_mini(3), "prime", 3, 5),
    "G5_7_1599": (_five_seven("G5_7_1599"), "prime", 5, 7),
    "G5_7_1734": (_five_seven("G5_7_1734"), "prime", 5, 7),
    "G5_7_1766": (_five_seven("G5_7_1766"), "prime", 5, 7),
}

_FACTS = {
    "cyclic": lambda p, n: (("order", p**n), ("class", 1 if n else 0), ("exponent", p**n), ("abelian", True)),
    "elem_abelian": lambda p, n: (("order", p**n), ("exponent", p if n else 1), ("abelian", True)),
    "heisenberg": lambda p, n: (("order", p**3), ("class", 2), ("exponent", p), ("center_order", p)),
    "modular": lambda p, n: (("order", p**3), ("class", 2), ("exponent", p * p), ("center_order", p)),
    "c_p2_x_cp": lambda p, n: (("order", p**3), ("abelian", True), ("exponent", p * p)),
    "maxclass_p4": lambda p, n: (("order", p**4), ("class", 3), ("center_order", p)),
    "heisenberg_x_cp": lambda p, n: (("order", p**4), ("class", 2), ("center_order", p * p)),
    "maxclass_p4_x_cp": lambda p, n: (("order", p**5), ("class", 3), ("center_index", p**3)),
    "extraspecial_p5": lambda p, n: (("order", p**5), ("class", 2), ("center_order", p)),
    "free_class3_rank2": lambda p, n: (("order", p**5), ("class", 3), ("center_index", p**3)),
    "free_class2_rank3": lambda p, n: (("order", p**6), ("class", 2), ("center_index", p**3)),
    "mini_1": lambda p, n: (("order", p**5), ("class", 3), ("center_index", p**3)),
    "mini_2": lambda p, n: (("order", p**5), ("class", 3), ("center_index", p**3)),
    "mini_3": lambda p, n: (("order", p**5), ("class", 3), ("center_index", p**3)),
}


def builtin_names() -> list[str]:
    return list(_REGISTRY)


def builtin(name: str, param: int | None = None) -> CatalogEntry:
    """A registered group (entries are cached and shared).

    ``param`` is the group order for ``cyclic`` and ``elem_abelian`` and the
    prime otherwise; a fixed-order family also accepts its order ``p^n``.
    """
    return _builtin(name, None if param is None else int(param))


@lru_cache(maxsize=None)
def _builtin(name: str, param: int | None) -> CatalogEntry:
    if name not in _REGISTRY:
        raise InputError(f"unknown builtin {name!r}; known: {', '.join(_REGISTRY)}")
    build, kind, default, exp = _REGISTRY[name]
    param = default if param is None else int(param)
    p, n = _prime_power(param)
    if kind == "prime":
        if n not in (1, exp):
            raise InputError(f"{name} takes a prime (or its order p^{exp}), got {param}")
        param = p
    if p == 2 and kind != "order":
        raise InputError(f"{name} is only provided for odd p")
    pres, prov = build(param)
    if name in _FIVE_SEVEN:
        facts = _FIVE_SEVEN_FACTS
    else:
        facts = _FACTS[name](p, pres.n)
    return CatalogEntry(pres.name, p, pres, prov, tuple(facts))


def parse_reference(ref: str) -> tuple[str, int | None]:
    """``NAME`` or ``NAME:PARAM`` after the ``builtin:`` prefix."""
    parts = ref.split(":")
    if len(parts) > 2 or not parts[0]:
        raise InputError(f"bad builtin reference {ref!r}")
    if len(parts) == 2:
        try:
            return parts[0], int(parts[1])
        except ValueError:
            raise InputError(f"bad parameter in builtin reference {ref!r}") from None
    return parts[0], None


def resolve(ref: str) -> CatalogEntry:
    """``builtin:NAME[:p]`` or a path to a presentation file."""
    if ref.startswith("builtin:"):
        return builtin(*parse_reference(ref[len("builtin:"):]))
    return load(ref)


def standard_instances(max_order: int | None = None) -> list[CatalogEntry]:
    """The catalog groups used by the property suites, by increasing order."""
    refs = [
        ("cyclic", 9), ("elem_abelian", 9), ("cyclic", 27), ("elem_abelian", 27), ("c_p2_x_cp", 3),
        ("heisenberg", 3), ("modular", 3), ("maxclass_p4", 3), ("heisenberg_x_cp", 3), ("cyclic", 81),
        ("maxclass_p4_x_cp", 3), ("extraspecial_p5", 3), ("free_class3_rank2", 3),
        ("mini_1", 3), ("mini_2", 3), ("mini_3", 3), ("free_class2_rank3", 3),
        ("cyclic", 25), ("elem_abelian", 25), ("heisenberg", 5), ("modular", 5), ("c_p2_x_cp", 5),
        ("maxclass_p4", 5), ("heisenberg_x_cp", 5),
        ("G5_7_1599", 5), ("G5_7_1734", 5), ("G5_7_1766", 5),
    ]
    out = [builtin(n, q) for n, q in refs]
    if max_order is not None:
        out = [e for e in out if e.presentation.order <= max_order]
    return out


# --- expected facts ---------------------------------------------------------

def observed_fact(entry: CatalogEntry, field: str):
    G = entry.presentation
    if field == "order":
        return G.order
    if field == "class":
        return sg.nilpotency_class(G)
    if field == "exponent":
        return sg.exponent(G)
    if field == "abelian":
        return sg.nilpotency_class(G) <= 1
    if field == "center_order":
        return sg.center(G).order
    if field == "center_index":
        return G.order // sg.center(G).order
    if field == "center_invariants":
        return sg.abelian_invariants(sg.center(G))
    if field == "generator_rank":
        return sg.generator_rank(G)
    raise InputError(f"unknown fact field {field!r}")


def check_expected_facts(entry: CatalogEntry) -> list[tuple[str, object, object, bool]]:
    out = []
    for field, want in entry.expected_facts:
        got = observed_fact(entry, field)
        if isinstance(want, list):
            want = tuple(want)
        out.append((field, want, got, got == want))
    return out


# --- files ------------------------------------------------------------------

def _word_to_json(w) -> list[list[int]]:
    return [[i + 1, int(e)] for i, e in enumerate(w) if e]


def to_dict(entry: CatalogEntry) -> dict:
    G = entry.presentation
    return {
        "name": entry.name,
        "prime": G.p,
        "ngens": G.n,
        "powers": [_word_to_json(w) for w in G.powers],
        "commutators": [{"j": j + 1, "i": i + 1, "word": _word_to_json(w)} for (j, i), w in G.commutators],
        "provenance": entry.provenance,
        "expected_facts": [[f, list(v) if isinstance(v, tuple) else v] for f, v in entry.expected_facts],
    }


def save(entry: CatalogEntry, path) -> None:
    Path(path).write_text(json.dumps(to_dict(entry), indent=2) + "\n")


def _require(obj, key, kind, where):
    if key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    val = obj[key]
    if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
        raise ParseError(f"{where}: field {key!r} must be an integer")
    if kind is not int and not isinstance(val, kind):
        raise ParseError(f"{where}: field {key!r} must be {kind.__name__}")
    return val


def _parse_word(raw, p, n, where) -> list[tuple[int, int]]:
    if not isinstance(raw, list):
        raise ParseError(f"{where}: word must be a list of [generator, exponent] pairs")
    out = []
    for k, pair in enumerate(raw):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in pair)
        ):
            raise ParseError(f"{where}[{k}]: expected [generator, exponent]")
        out.append((pair[0], pair[1]))
    prev = 0
    for g, e in out:
        if not 1 <= g <= n:
            raise ValidationError(f"{where}: generator {g} out of range 1..{n}")
        if g <= prev:
            raise ValidationError(f"{where}: word not in normal form (generators must strictly increase)")
        if not 1 <= e < p:
            raise ValidationError(f"{where}: exponent {e} not in [1, {p})")
        prev = g
    return out


def from_dict(data, source: str = "<data>", check: bool = True) -> CatalogEntry:
    if not isinstance(data, dict):
        raise ParseError(f"{source}: top level must be an object")
    name = _require(data, "name", str, source)
    p = _require(data, "prime", int, source)
    n = _require(data, "ngens", int, source)
    powers_raw = _require(data, "powers", list, source)
    comms_raw = data.get("commutators", [])
    if not isinstance(comms_raw, list):
        raise ParseError(f"{source}: field 'commutators' must be list")
    if not is_prime(p) or n < 0:
        raise ValidationError(f"{source}: prime must be prime and ngens nonnegative")
    if len(powers_raw) != n:
        raise ValidationError(f"{source}: expected {n} power words, got {len(powers_raw)}")
    powers = {}
    for i, raw in enumerate(powers_raw):
        w = _parse_word(raw, p, n, f"{source}: powers[{i}]")
        if w:
            powers[i + 1] = w
    comms = {}
    for k, c in enumerate(comms_raw):
        where = f"{source}: commutators[{k}]"
        if not isinstance(c, dict):
            raise ParseError(f"{where}: expected an object with j, i, word")
        j = _require(c, "j", int, where)
        i = _require(c, "i", int, where)
        if not (1 <= i < j <= n):
            raise ValidationError(f"{where}: need 1 <= i < j <= ngens, got j={j}, i={i}")
        if (j, i) in comms:
            raise ValidationError(f"{where}: duplicate commutator [{j}, {i}]")
        comms[(j, i)] = _parse_word(_require(c, "word", list, where), p, n, where)
    try:
        pres = PcPresentation.from_relations(p, n, powers=powers, commutators=comms, name=name)
    except InputError as exc:
        raise ValidationError(f"{source}: {exc}") from None
    if check:
        report = consistency_check(pres)
        if not report:
            raise ValidationError(f"{source}: inconsistent presentation; failing check {report.failure}")
    facts = []
    for f in data.get("expected_facts", []):
        if not (isinstance(f, list) and len(f) == 2 and isinstance(f[0], str)):
            raise ParseError(f"{source}: expected_facts entries must be [field, value]")
        facts.append((f[0], tuple(f[1]) if isinstance(f[1], list) else f[1]))
    prov = data.get("provenance", "")
    if not isinstance(prov, str):
        raise ParseError(f"{source}: field 'provenance' must be str")
    return CatalogEntry(name, p, pres, prov, tuple(facts))


def load(path, check: bool = True) -> CatalogEntry:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_dict(data, str(path), check)
