"""Decide cellularity and compute cellularizations for a few model/space pairs."""

from moorecell import cw, is_cellular, moore_model, normalize, parse, parse_space
from moorecell.radical import PreconditionError
from moorecell.spaces import space_text

PAIRS = [
    ("Z[1/2] * Z/2", "K(Z,2)"),
    ("Z[1/2]", "K(Z(2^inf),1)"),
    ("Q", "S^2"),
    ("type(1)", "S^2"),
    ("Z/3", "space{pi1=Z/9; H=[Z/9]}"),
    ("Z(3^inf)", "M(Z/3,2)"),
]

for group, space in PAIRS:
    m = moore_model(normalize(parse(group)))
    x = parse_space(space)
    v = is_cellular(m, x, full=True)
    cites = ", ".join(dict.fromkeys(e.citation for e in v.trail)) or "-"
    try:
        r = cw(m, x)
        out = space_text(r.space) if r.known else "Unknown"
    except PreconditionError as e:
        out = f"not computed ({e})"
    print(f"M({group},1) vs {space}\n  cellular: {v.answer.value} [{cites}]\n  CW: {out}")
