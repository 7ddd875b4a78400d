"""Exception types shared across the package."""


class GallaiError(Exception):
    """Base class for all package errors."""


class IncompleteAssignment(GallaiError):
    """An edge of the complete graph was left without a color."""


class ColorOutOfRange(GallaiError):
    """A color id lies outside the declared palette [1..k]."""


class VertexOutOfRange(GallaiError):
    """A vertex id lies outside [1..n]."""


class NotGallai(GallaiError):
    """An operation whose guarantee needs a rainbow-triangle-free input
    found that the guarantee fails; carries a diagnostic."""


class BadParams(GallaiError):
    """Construction or search parameters violate a precondition."""


class ArityMismatch(GallaiError):
    """substitution_product received the wrong number of parts."""


class ColorCollision(GallaiError):
    """join_copies was given a fresh color that already appears."""


class MalformedPartition(GallaiError):
    """A claimed vertex partition does not partition [1..n]."""


class NotExact(GallaiError):
    """A declared palette color never appears in the coloring."""


class NoStarColor(GallaiError):
    """reduce_by_star found no color inducing a star."""


class HypothesisViolated(GallaiError):
    """A lemma's hypothesis failed; the message names the failing claim."""


class BadProbability(GallaiError):
    """A probability parameter lies outside its open interval."""


class BudgetExceeded(GallaiError):
    """A search exhausted its node or wall-clock budget."""
