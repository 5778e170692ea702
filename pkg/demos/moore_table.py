"""Print Moore-space existence and the two-dimensional model for a list of groups."""

import sys

from moorecell import exists_moore, moore_model, normalize, parse, to_text
from moorecell.moore import MooreModel

DEFAULT = ["Z", "Q", "Z/12", "Z/3 + Z/3", "Z + Z/3", "Z[1/3]", "Z[1/3] + Z/3",
           "Z(3^inf)", "Z(3^inf) + Z/5", "type(1)", "Z[1/2] * Z/2"]


def main(texts):
    width = max(len(t) for t in texts)
    for text in texts:
        g = normalize(parse(text))
        v = exists_moore(g)
        if v.yes:
            m = moore_model(g)
            detail = str(m.recipe) if isinstance(m, MooreModel) else f"no recipe ({m.reason})"
        else:
            detail = f"clause {v.witnesses['clause']}: {v.witnesses['reason']}"
        print(f"{to_text(g):<{width}}  {v.answer.value:<3}  {detail}")


if __name__ == "__main__":
    main(sys.argv[1:] or DEFAULT)
