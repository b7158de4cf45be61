"""Exception hierarchy shared by every submodule."""


class MacextError(Exception):
    """Base class for all library errors."""


class ValidationError(MacextError, ValueError):
    """Input rejected before any computation ran."""


class NonPrime(ValidationError):
    pass


class ReducibleModulus(ValidationError):
    pass


class DegreeMismatch(ValidationError):
    pass


class FieldMismatch(ValidationError):
    pass


class DivisionByZero(MacextError, ZeroDivisionError):
    pass


class SpecParse(ValidationError):
    pass


class AxiomViolation(ValidationError):
    def __init__(self, axiom, witnesses=()):
        self.axiom = axiom
        self.witnesses = tuple(witnesses)
        super().__init__(f"{axiom} fails at {self.witnesses}")


class CapExceeded(MacextError):
    pass


class OrderCapExceeded(CapExceeded):
    pass


class EnumerationCapExceeded(CapExceeded):
    pass


class SearchCapExceeded(CapExceeded):
    pass


class NotAbelian(ValidationError):
    pass


class NotASubgroup(ValidationError):
    pass


class NotStandardForm(ValidationError):
    pass


class RankDeficient(ValidationError):
    pass


class NonFieldAlphabet(ValidationError):
    pass


class NotIsomorphism(ValidationError):
    pass


class WeightNotPreserved(ValidationError):
    def __init__(self, witness, detail=""):
        self.witness = witness
        super().__init__(f"weight differs at codeword {witness} {detail}".strip())


class HypothesisUnverified(ValidationError):
    pass


class KNotGreaterThanM(ValidationError):
    pass


class NotInKernel(ValidationError):
    pass


class ZeroFunction(ValidationError):
    pass


class SocleConditionUnverified(ValidationError):
    pass


class NotIsometry(ValidationError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"weight not preserved at message {witness}")


class ColumnMatchFailure(MacextError):
    pass


class InternalInconsistency(MacextError, AssertionError):
    pass


class NoMatrixWitness(InternalInconsistency):
    pass
