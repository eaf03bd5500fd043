"""Exception hierarchy shared by all modules.

Every domain error carries a ``witness`` so that failures can be reported
verbatim by the command line front end.
"""


class GreenMoritaError(Exception):
    """Base class for all errors raised by this package."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

    def to_dict(self):
        return {"error": type(self).__name__, "message": str(self),
                "witness": _jsonable(self.witness)}


def _jsonable(obj):
    if isinstance(obj, (list, tuple)):
        return [_jsonable(o) for o in obj]
    if isinstance(obj, (int, float, str)) or obj is None:
        return obj
    return repr(obj)


# semigroup-core
class NotAssociative(GreenMoritaError):
    pass


class NoInverse(GreenMoritaError):
    pass


class NonUniqueInverse(GreenMoritaError):
    pass


class NotIdempotent(GreenMoritaError):
    pass


class BadParams(GreenMoritaError):
    pass


# coset-space
class RangeNotAtom(GreenMoritaError):
    pass


class NotEquivalence(GreenMoritaError):
    pass


# algebra-engine
class NotSemisimple(GreenMoritaError):
    pass


class NotSelfAdjoint(GreenMoritaError):
    pass


class NotCStar(GreenMoritaError):
    pass


class DegenerateSplit(GreenMoritaError):
    pass


# crossed-products
class NotHomomorphism(GreenMoritaError):
    pass


class NotStarEndo(GreenMoritaError):
    pass


class CentralityAxiomFails(GreenMoritaError):
    pass


class IndexNotClosed(GreenMoritaError):
    pass


class MismatchReport(GreenMoritaError):
    pass


# induction
class StabilizerInconsistent(GreenMoritaError):
    pass


# cli-io
class ParseError(GreenMoritaError):
    pass
