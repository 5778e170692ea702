"""Moore spaces M(G,1), radicals and cellularity over a fragment of abelian groups.

Groups are immutable expression trees (see :mod:`moorecell.groups`), parsed
from text by :func:`parse`.  Decision procedures return a
:class:`~moorecell.verdict.Verdict` carrying an answer, a citation trail and
witnesses.
"""

from .cellularity import CascadeConflict, cw, g_cellular, is_cellular, moore_on_moore
from .coeffs import derive_coeffs, hr_acyclic
from .groups import (BaerType, Cyclic, FragmentError, FreeProduct, GroupExpr, Int,
                     Prufer, RankOne, Sum, Trivial, abelianize, classify, normalize,
                     to_text)
from .homalg import Unsupported, bifunctor, ext, hom, tensor, tor
from .moore import exists_moore, moore_model, presentation_check
from .oracle import FiniteAb, finite_bifunctor, finite_radical
from .parsing import ParseError, parse, parse_space
from .primes import PrimeSet
from .radical import (PreconditionError, is_quasi_radical, is_radical, radical,
                      universal_extension)
from .smith import smith_normal_form
from .telescope import telescope_prefix
from .verdict import Answer, Verdict

__version__ = "0.1.0"

__all__ = [
    "Answer", "BaerType", "CascadeConflict", "Cyclic", "FiniteAb", "FragmentError",
    "FreeProduct", "GroupExpr", "Int", "ParseError", "PreconditionError", "PrimeSet",
    "Prufer", "RankOne", "Sum", "Trivial", "Unsupported", "Verdict", "abelianize",
    "bifunctor", "classify", "cw", "derive_coeffs", "exists_moore", "ext",
    "finite_bifunctor", "finite_radical", "g_cellular", "hom", "hr_acyclic",
    "is_cellular", "is_quasi_radical", "is_radical", "moore_model", "moore_on_moore",
    "normalize", "parse", "parse_space", "presentation_check", "radical",
    "smith_normal_form", "telescope_prefix", "tensor", "to_text", "tor",
    "universal_extension",
]
