"""Exception hierarchy for charvar_epoly.

Library code raises these and never exits; cli.py maps them to exit codes.
"""


class EPolyError(Exception):
    """Base class for every error raised by the package."""


# ---------- Exact arithmetic ----------
class ArithmeticDomainError(EPolyError):
    pass


class NonExactDivision(ArithmeticDomainError):
    def __init__(self, dividend: str, divisor: str, remainder: str):
        self.dividend = dividend
        self.divisor = divisor
        self.remainder = remainder
        super().__init__(f"({dividend}) / ({divisor}) leaves remainder {remainder}")


class NonIntegralPolynomial(ArithmeticDomainError):
    def __init__(self, poly: str, exponent: int, coefficient: str):
        self.poly = poly
        self.exponent = exponent
        self.coefficient = coefficient
        super().__init__(f"coefficient {coefficient} of q^{exponent} in {poly} is not an integer")


class DegreeGuard(ArithmeticDomainError):
    def __init__(self, degree: int, limit: int):
        self.degree = degree
        self.limit = limit
        super().__init__(f"polynomial degree {degree} exceeds guard {limit}")


class PolynomialParseError(ArithmeticDomainError, ValueError):
    pass


# ---------- Consistency checks ----------
class VerificationError(EPolyError):
    pass


class StratumSumMismatch(VerificationError):
    def __init__(self, stratum: str, computed: str, expected: str):
        self.stratum = stratum
        self.computed = computed
        self.expected = expected
        super().__init__(f"{stratum}: computed {computed} but expected {expected}")


class EulerMismatch(VerificationError):
    def __init__(self, name: str, computed: int, expected: int):
        self.name = name
        self.computed = computed
        self.expected = expected
        super().__init__(f"{name}: computed {computed} but expected {expected}")


# ---------- Guards ----------
class GuardError(EPolyError):
    pass


class RankGuard(GuardError):
    pass


class GuardExceeded(GuardError):
    pass


# ---------- Finite fields ----------
class FieldError(EPolyError):
    pass


class NotPrime(FieldError, ValueError):
    pass


class NotASubfield(FieldError):
    pass


class ExtensionTooSmall(FieldError):
    pass


class UnsupportedField(FieldError):
    pass
