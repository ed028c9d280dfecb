"""Exception types.  Reportable outcomes and fatal internal errors are kept
apart: the former (cap hits, non-subrings, flatness failures) are caught and
written into reports, the latter mean a computed object broke a structural guarantee."""


class QuotlabError(Exception):
    pass


class RingValidationError(QuotlabError):
    pass


class AssociativityViolation(RingValidationError):
    def __init__(self, i, j, l):
        super().__init__(f"(e{i} e{j}) e{l} != e{i} (e{j} e{l})")
        self.indices = (i, j, l)


class UnitViolation(RingValidationError):
    def __init__(self, i):
        super().__init__(f"unit does not act as identity on e{i}")
        self.index = i


class CompatibilityViolation(RingValidationError):
    def __init__(self, i, j):
        super().__init__(f"e{i} e{j} is not killed by the moduli of e{i} and e{j}")
        self.indices = (i, j)


class ShapeError(RingValidationError):
    pass


class ModuleValidationError(QuotlabError):
    pass


class CapExceeded(QuotlabError):
    def __init__(self, cap, what="objects"):
        super().__init__(f"more than {cap} {what}")
        self.cap = cap


class PresentationMismatch(QuotlabError):
    pass


class RealizationViolation(QuotlabError):
    """End(D) failed to behave as the maximal ring of quotients."""


class NotASubring(QuotlabError):
    def __init__(self, witness, why):
        super().__init__(f"not a subring: {why} {witness}")
        self.witness = witness


class InternalViolation(QuotlabError):
    pass


class FlatnessFailure(QuotlabError):
    def __init__(self, step):
        super().__init__(f"Q_{step} is not flat as a left module")
        self.step = step


class PreconditionFailure(QuotlabError):
    pass


class DirectednessViolation(QuotlabError):
    pass


class ParseError(QuotlabError):
    def __init__(self, msg, location=None):
        super().__init__(f"{location}: {msg}" if location is not None else msg)
        self.location = location


class ValidationError(QuotlabError):
    def __init__(self, entry, cause):
        super().__init__(f"entry {entry!r}: {cause}")
        self.entry = entry
        self.cause = cause
