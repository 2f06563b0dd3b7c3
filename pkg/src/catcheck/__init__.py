"""catcheck: decides categorical exactness properties of small finite
categories by exhaustive search, with tri-state verdicts and re-checkable
failure witnesses."""

__version__ = "0.1.0"

from .budget import Budget
from .fincat import FinCategory, MorRef, Diagram, Cone, Cocone, Verdict

__all__ = [
    "Budget",
    "FinCategory",
    "MorRef",
    "Diagram",
    "Cone",
    "Cocone",
    "Verdict",
    "__version__",
]
