"""Command-line front end: parse spec files, run computations, print tables.

Spec files are JSON (or TOML with the same keys): ``components`` lists
{series, rank, kind}; ``tau`` optionally gives per-component involution
data (id / flip / swap:<partner> / {"perm": [...]}); ``F`` lists
fundamental-group generators; ``q`` gives per-component labels in
affine-vertex order.  Output is deterministic: the same input produces
byte-identical output.

Exit codes: 0 ok, 2 parse error, 3 validation or domain error, 4 oracle
mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction as Q

from . import functor, kac, lattice, linalg, oracle
from .groupspec import (
    ComponentSpec,
    GroupSpec,
    ValidationError,
    restricted_data,
)
from .kac import H1Result
from .rootdata import PairKind, RootDataError, SimpleType

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_MISMATCH = 4


class SpecParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Spec file parsing.


def _load_document(path: str) -> dict:
    if path == "-":
        text = sys.stdin.read()
        return _parse_text(text, "json")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise SpecParseError(f"cannot read {path}: {e}") from None
    fmt = "toml" if path.endswith(".toml") else "json"
    return _parse_text(text, fmt)


def _parse_text(text: str, fmt: str) -> dict:
    if fmt == "toml":
        try:
            import tomllib  # Python >= 3.11
        except ImportError:  # pragma: no cover
            import tomli as tomllib
        try:
            doc = tomllib.loads(text)
        except Exception as e:
            raise SpecParseError(f"TOML parse error: {e}") from None
    else:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise SpecParseError(f"JSON parse error: {e}") from None
    if not isinstance(doc, dict):
        raise SpecParseError("spec document must be a mapping")
    return doc


def _parse_kind(s) -> PairKind:
    try:
        return PairKind(str(s).lower())
    except ValueError:
        raise SpecParseError(f"unknown kind {s!r}") from None


def _parse_type(series, rank) -> SimpleType:
    try:
        return SimpleType(str(series).upper(), int(rank))
    except (RootDataError, TypeError, ValueError) as e:
        raise SpecParseError(f"bad simple type: {e}") from None


def _parse_tau_entry(entry, comp_index: int):
    """Returns ('id'|'flip'|'perm'|'swap', payload)."""
    if entry is None or entry == "id":
        return ("id", None)
    if entry == "flip":
        return ("flip", None)
    if isinstance(entry, str) and entry.startswith("swap:"):
        try:
            return ("swap", int(entry.split(":", 1)[1]))
        except ValueError:
            raise SpecParseError(f"bad swap partner in tau[{comp_index}]") from None
    if isinstance(entry, dict) and "perm" in entry:
        try:
            perm = tuple(int(x) - 1 for x in entry["perm"])
        except (TypeError, ValueError):
            raise SpecParseError(f"bad permutation in tau[{comp_index}]") from None
        return ("perm", perm)
    raise SpecParseError(f"bad tau entry {entry!r}")


def _rational(x) -> Q:
    if isinstance(x, bool):
        raise SpecParseError(f"bad number {x!r}")
    if isinstance(x, int):
        return Q(x)
    if isinstance(x, str):
        try:
            return Q(x)
        except (ValueError, ZeroDivisionError):
            raise SpecParseError(f"bad rational {x!r}") from None
    raise SpecParseError(f"bad number {x!r}")


def parse_spec(doc: dict) -> GroupSpec:
    """Normalize a spec document into a GroupSpec (no domain validation yet)."""
    raw_comps = doc.get("components")
    if not isinstance(raw_comps, list) or not raw_comps:
        raise SpecParseError("spec needs a nonempty 'components' list")
    taus = doc.get("tau")
    if taus is not None and (not isinstance(taus, list) or len(taus) != len(raw_comps)):
        raise SpecParseError("'tau' must align with 'components'")

    n_raw = len(raw_comps)
    kinds: list[PairKind] = []
    bases: list[SimpleType] = []
    perms: list[tuple[int, ...] | None] = []
    swap_partner: list[int | None] = [None] * n_raw
    for i, rc in enumerate(raw_comps):
        if not isinstance(rc, dict):
            raise SpecParseError(f"component {i} must be a mapping")
        base = _parse_type(rc.get("series"), rc.get("rank"))
        tau_entry = _parse_tau_entry(taus[i] if taus else None, i)
        kind_given = _parse_kind(rc["kind"]) if "kind" in rc else None
        if tau_entry[0] == "swap" and isinstance(tau_entry[1], int):
            swap_partner[i] = tau_entry[1]
            kind = PairKind.INNER if kind_given is None else kind_given
            if kind is not PairKind.INNER:
                raise SpecParseError(
                    f"component {i}: swap:<j> tau requires plain components"
                )
            perm = None
        else:
            implied = {
                "id": PairKind.INNER,
                "flip": PairKind.OUTER,
                "perm": PairKind.OUTER,
            }[tau_entry[0]]
            kind = kind_given if kind_given is not None else (
                implied if taus else PairKind.INNER
            )
            if taus and tau_entry[0] == "id" and kind is PairKind.OUTER:
                raise SpecParseError(f"component {i}: outer kind with tau 'id'")
            if tau_entry[0] in ("flip", "perm") and kind is not PairKind.OUTER:
                raise SpecParseError(f"component {i}: tau {tau_entry[0]} needs outer kind")
            perm = tau_entry[1] if tau_entry[0] == "perm" else None
        bases.append(base)
        kinds.append(kind)
        perms.append(perm)

    # Merge swap:<j> pairs into single swap components.
    merged_of = list(range(n_raw))
    drop = set()
    for i, j in enumerate(swap_partner):
        if j is None:
            continue
        if not (0 <= j < n_raw) or j == i:
            raise SpecParseError(f"component {i}: bad swap partner {j}")
        if swap_partner[j] != i:
            raise SpecParseError(f"components {i} and {j}: swap must be mutual")
        if bases[i] != bases[j]:
            raise SpecParseError(f"components {i} and {j}: swap needs equal types")
        if i < j:
            kinds[i] = PairKind.SWAP
            drop.add(j)
            merged_of[j] = i
    keep = [i for i in range(n_raw) if i not in drop]
    new_index = {orig: k for k, orig in enumerate(keep)}

    comps = tuple(
        ComponentSpec(bases[i], kinds[i], perms[i]) for i in keep
    )
    spec_shell = GroupSpec(components=comps, f_generators=(), q=())

    offsets = []
    off = 0
    for c in comps:
        offsets.append(off)
        off += c.full_rank
    full_dim = off

    def term_vector(term) -> tuple[Q, ...]:
        if not isinstance(term, dict):
            raise SpecParseError(f"bad F term {term!r}")
        if "component" not in term:
            raise SpecParseError("F term needs a 'component'")
        orig = int(term["component"])
        if not (0 <= orig < n_raw):
            raise SpecParseError(f"F term component {orig} out of range")
        tgt = new_index[merged_of[orig]]
        base_rank = comps[tgt].base.rank
        second_factor = merged_of[orig] != orig
        vec = [Q(0)] * full_dim
        if "coweight" in term:
            w = int(term["coweight"])
            limit = base_rank if swap_partner[orig] is not None else comps[tgt].full_rank
            if not (1 <= w <= limit):
                raise SpecParseError(f"coweight index {w} out of range")
            mult = _rational(term.get("multiplicity", 1))
            pos = offsets[tgt] + (base_rank if second_factor else 0) + w - 1
            vec[pos] = mult
        elif "vector" in term:
            entries = [_rational(x) for x in term["vector"]]
            # A term addressing one factor of a merged swap pair covers
            # that factor; otherwise it covers the whole component.
            merged_pair = swap_partner[orig] is not None
            width = base_rank if merged_pair else comps[tgt].full_rank
            if len(entries) != width:
                raise SpecParseError(
                    f"F term vector has length {len(entries)}, expected {width}"
                )
            start = offsets[tgt] + (base_rank if second_factor else 0)
            for k, x in enumerate(entries):
                vec[start + k] = x
        else:
            raise SpecParseError("F term needs 'coweight' or 'vector'")
        return tuple(vec)

    gens = []
    for gi, gen in enumerate(doc.get("F", []) or []):
        if isinstance(gen, dict):
            gens.append(term_vector(gen))
        elif isinstance(gen, list) and gen and all(isinstance(t, dict) for t in gen):
            v = [Q(0)] * full_dim
            for t in gen:
                v = [a + b for a, b in zip(v, term_vector(t))]
            gens.append(tuple(v))
        elif isinstance(gen, list):
            entries = [_rational(x) for x in gen]
            if len(entries) != full_dim:
                raise SpecParseError(
                    f"F generator {gi}: explicit vector length {len(entries)} != {full_dim}"
                )
            gens.append(tuple(entries))
        else:
            raise SpecParseError(f"bad F generator {gen!r}")

    raw_q = doc.get("q")
    if not isinstance(raw_q, list):
        raise SpecParseError("spec needs a 'q' list")
    if len(raw_q) == n_raw and drop:
        rows = []
        for i in keep:
            rows.append(raw_q[i])
            j = swap_partner[i]
            if j is not None and raw_q[j] is not None and raw_q[j] != raw_q[i]:
                raise SpecParseError(
                    f"components {i} and {j}: swap pair labels must agree"
                )
        raw_q = rows
    if len(raw_q) != len(comps):
        raise SpecParseError("'q' must have one label vector per component")
    q_rows = []
    for i, row in enumerate(raw_q):
        if not isinstance(row, list):
            raise SpecParseError(f"q[{i}] must be a list")
        try:
            q_rows.append(tuple(int(x) for x in row))
        except (TypeError, ValueError):
            raise SpecParseError(f"q[{i}] must hold integers") from None

    return GroupSpec(components=comps, f_generators=tuple(gens), q=tuple(q_rows))


def load_spec(path: str) -> GroupSpec:
    return parse_spec(_load_document(path))


# ---------------------------------------------------------------------------
# Formatting helpers.


def fmt_labeling(p) -> str:
    return "|".join("[" + ",".join(str(x) for x in row) + "]" for row in p)


def fmt_vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def spec_echo(spec: GroupSpec) -> dict:
    comps = []
    for cs in spec.components:
        entry = {"series": cs.base.series, "rank": cs.base.rank, "kind": str(cs.kind)}
        if cs.tau_perm is not None:
            entry["tau_perm"] = [i + 1 for i in cs.tau_perm]
        comps.append(entry)
    return {
        "components": comps,
        "F": [[str(x) for x in g] for g in spec.f_generators],
        "q": [list(row) for row in spec.q],
    }


def result_document(res: H1Result, rd) -> dict:
    classes = []
    for cls in res.classes:
        classes.append(
            {
                "representative": [list(r) for r in cls.representative],
                "orbit": [[list(r) for r in p] for p in cls.orbit],
                "nu": [str(x) for x in cls.nu],
                "nu_mod_2": list(cls.nu_mod_2),
                "signs": list(cls.signs),
                "neutral": cls.is_neutral,
            }
        )
    return {
        "spec": spec_echo(res.spec),
        "derived": {
            "vertex_labels": [list(c.vertex_labels) for c in rd.comps],
            "marks": [list(c.marks) for c in rd.comps],
            "kac_labelings": res.n_labelings,
            "filtered": res.n_filtered,
            "classes": res.count,
            "F0_invariants": list(rd.F0.invariant_factors),
            "C0_invariants": list(rd.C0.invariant_factors),
        },
        "classes": classes,
    }


def h1_text(res: H1Result, rd) -> str:
    lines = []
    lines.append("components: " + " | ".join(str(cs) for cs in res.spec.components))
    lines.append(
        "marks: " + " | ".join("[" + ",".join(map(str, c.marks)) + "]" for c in rd.comps)
    )
    lines.append(
        f"labelings: {res.n_labelings} total, {res.n_filtered} congruent to q, "
        f"{res.count} classes"
    )
    lines.append(
        "F0 invariants: ["
        + ",".join(map(str, rd.F0.invariant_factors))
        + "]  C0 invariants: ["
        + ",".join(map(str, rd.C0.invariant_factors))
        + "]"
    )
    for i, cls in enumerate(res.classes, 1):
        tag = " neutral" if cls.is_neutral else ""
        lines.append(
            f"class {i}:{tag} rep={fmt_labeling(cls.representative)} "
            f"orbit_size={len(cls.orbit)} nu={fmt_vec(cls.nu)} "
            f"nu_mod_2=[{','.join(map(str, cls.nu_mod_2))}] "
            f"signs=[{','.join(map(str, cls.signs))}]"
        )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Subcommands.


def cmd_h1(args) -> int:
    spec = load_spec(args.spec)
    rd = restricted_data(spec)
    res = kac.h1(spec, rd)
    if args.format == "json":
        out = json.dumps(result_document(res, rd), indent=2)
        sys.stdout.write(out + "\n")
    else:
        sys.stdout.write(h1_text(res, rd))
    return EXIT_OK


_TABLE_WEIGHT_ROWS = {
    # inner/swap: named fundamental weights generating the weight classes,
    # per the classical tables; index is the vertex label.
    ("A", PairKind.INNER): lambda n: [1] if n >= 1 else [],
    ("B", PairKind.INNER): lambda n: [n],
    ("C", PairKind.INNER): lambda n: [1],
    ("D", PairKind.INNER): lambda n: [n, 1],
    ("E6", PairKind.INNER): lambda n: [1],
    ("E7", PairKind.INNER): lambda n: [7],
}


def _tables_weight_rows(comp) -> list[int]:
    base, kind = comp.base, comp.kind
    if kind is PairKind.OUTER:
        if base.series == "A" and base.rank % 2 == 1:
            return [comp.vertex_labels[1]]
        if base.series == "D":
            return [comp.vertex_labels[-1]]
        return []
    key = (base.series + str(base.rank), PairKind.INNER)
    fn = _TABLE_WEIGHT_ROWS.get(key) or _TABLE_WEIGHT_ROWS.get((base.series, PairKind.INNER))
    return fn(base.rank) if fn else []


def tables_text(comp) -> str:
    """Marks and restricted-weight coefficient rows of one affine diagram."""
    lines = []
    lines.append(f"type: {comp.base} {comp.kind}")
    lines.append("vertices: " + " ".join(str(v) for v in comp.vertex_labels))
    lines.append("marks:    " + " ".join(str(m) for m in comp.marks))
    inv_cartan = linalg.inverse(comp.cartan)
    rows = _tables_weight_rows(comp)
    name = "omega" if comp.kind is PairKind.INNER else "omega-bar"
    for label in rows:
        pos = comp.vertex_labels.index(label) - 1
        coeffs = [inv_cartan[pos][j] for j in range(comp.n_finite)]
        frac = [c - (c.numerator // c.denominator) for c in coeffs]
        lines.append(
            f"{name}_{label} mod 1: "
            + " ".join(str(c) for c in frac)
        )
    return "\n".join(lines) + "\n"


def cmd_tables(args) -> int:
    base = _parse_type(*_split_type(args.type))
    kind = _parse_kind(args.kind)
    perm = None
    if args.tau_perm:
        perm = tuple(int(x) - 1 for x in args.tau_perm.split(","))
    from .rootdata import build_affine

    comp = build_affine(kind, base, perm)
    sys.stdout.write(tables_text(comp))
    return EXIT_OK


def _split_type(s: str) -> tuple[str, str]:
    s = s.strip().upper()
    if not s or s[0] not in "ABCDEFG" or not s[1:].isdigit():
        raise SpecParseError(f"bad type {s!r}; expected e.g. E7 or A5")
    return s[0], s[1:]


def cmd_forms(args) -> int:
    if args.spec:
        spec = load_spec(args.spec)
    elif args.type:
        base = _parse_type(*_split_type(args.type))
        kind = _parse_kind(args.kind)
        perm = tuple(int(x) - 1 for x in args.tau_perm.split(",")) if args.tau_perm else None
        cs = ComponentSpec(base, kind, perm)
        from .rootdata import build_affine

        comp = build_affine(kind, base, perm)
        q0 = [0] * comp.n_vertices
        q0[0] = 2 // comp.marks[0]
        spec = GroupSpec((cs,), (), (tuple(q0),))
    else:
        raise SpecParseError("forms needs a spec file or --type")
    rd = restricted_data(spec)
    orbits = kac.inner_forms(spec, rd)
    lines = [f"inner forms: {len(orbits)}"]
    for i, orbit in enumerate(orbits, 1):
        lines.append(
            f"form {i}: rep={fmt_labeling(orbit[0])} orbit_size={len(orbit)}"
        )
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_twist(args) -> int:
    spec = load_spec(args.spec)
    if args.base.strip().startswith("["):
        try:
            raw = json.loads(args.base)
        except json.JSONDecodeError as e:
            raise SpecParseError(f"bad --base: {e}") from None
    else:
        raw = _load_document(args.base).get("q")
    try:
        q_prime = tuple(tuple(int(x) for x in row) for row in raw)
    except (TypeError, ValueError):
        raise SpecParseError("--base must be a list of per-component label lists") from None
    tm = functor.twist(spec, q_prime)
    lines = [f"twist: base {fmt_labeling(q_prime)} -> base {fmt_labeling(spec.q)}"]
    for src, tgt in tm.pairs:
        lines.append(f"{fmt_labeling(src)} -> {fmt_labeling(tgt)}")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_push(args) -> int:
    spec = load_spec(args.spec)
    doc = _load_document(args.to)
    target_doc = {
        "components": spec_echo(spec)["components"],
        "F": doc.get("F", []),
        "q": [list(r) for r in spec.q],
    }
    # Reuse the spec parser so F terms get the same treatment.
    tgt_parsed = parse_spec(_normalize_echo(target_doc))
    pm = functor.pushforward(spec, tgt_parsed.f_generators)
    lines = ["pushforward:"]
    for src, tgt in pm.pairs:
        lines.append(f"{fmt_labeling(src)} -> {fmt_labeling(tgt)}")
    lines.append("fibers:")
    for rep, srcs in pm.fibers:
        lines.append(
            f"{fmt_labeling(rep)} <- {{" + ", ".join(fmt_labeling(s) for s in srcs) + "}"
        )
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def _normalize_echo(doc: dict) -> dict:
    out = dict(doc)
    comps = []
    for c in doc["components"]:
        c = dict(c)
        if "tau_perm" in c:
            c["kind"] = "outer"
        comps.append(c)
    out["components"] = comps
    taus = []
    needs_tau = False
    for c in doc["components"]:
        if "tau_perm" in c:
            taus.append({"perm": c["tau_perm"]})
            needs_tau = True
        else:
            taus.append("id" if c.get("kind") != "outer" else "flip")
            needs_tau = needs_tau or c.get("kind") == "outer"
    if needs_tau:
        out["tau"] = taus
    return out


def cmd_oracle(args) -> int:
    spec = load_spec(args.spec)
    rd = restricted_data(spec)
    bound = oracle.DEFAULT_RANK_BOUND
    env = os.environ.get("KACGAL_ORACLE_RANK_BOUND")
    if env is not None:
        try:
            bound = int(env)
        except ValueError:
            raise SpecParseError("KACGAL_ORACLE_RANK_BOUND must be an integer") from None
    res = kac.h1(spec, rd)
    br = oracle.brute_h1(spec, rd, rank_bound=bound)
    ok, report = oracle.match_classes(res, br, rd)
    lines = [f"kac classes: {res.count}", f"oracle orbits: {br.count}"]
    lines.append("MATCH" if ok else "MISMATCH")
    lines.extend(report)
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="kacgal",
        description="Galois cohomology of semisimple real groups via Kac labelings",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("h1", help="compute H^1 classes for a spec file")
    p.add_argument("spec", help="spec file path, or - for stdin")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_h1)

    p = sub.add_parser("forms", help="enumerate inner forms (orbits of all labelings)")
    p.add_argument("spec", nargs="?", help="spec file path")
    p.add_argument("--type", help="simple type, e.g. E7")
    p.add_argument("--kind", default="inner", help="inner, outer or swap")
    p.add_argument("--tau-perm", help="explicit involution, comma-separated images")
    p.set_defaults(func=cmd_forms)

    p = sub.add_parser("twist", help="twisting bijection to another base labeling")
    p.add_argument("spec")
    p.add_argument("--base", required=True, help="q' as inline JSON or a file")
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("push", help="push-forward along an isogeny enlarging F")
    p.add_argument("spec")
    p.add_argument("--to", required=True, help="file whose F field gives F'")
    p.set_defaults(func=cmd_push)

    p = sub.add_parser("oracle", help="cross-check class count via Weyl orbits")
    p.add_argument("spec")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("tables", help="print marks and weight coefficient rows")
    p.add_argument("--type", required=True)
    p.add_argument("--kind", default="inner")
    p.add_argument("--tau-perm", help="explicit involution for outer D4")
    p.set_defaults(func=cmd_tables)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except SpecParseError as e:
        sys.stderr.write(f"parse error: {e}\n")
        return EXIT_PARSE
    except (ValidationError, RootDataError, lattice.LatticeError) as e:
        sys.stderr.write(f"validation error: {e}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
