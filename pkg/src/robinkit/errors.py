"""Exception hierarchy shared across robinkit."""


class RobinkitError(Exception):
    """Base class for all robinkit errors."""


class InvalidArgument(RobinkitError, ValueError):
    pass


class DomainError(RobinkitError, ValueError):
    """Input lies outside the domain where a functional is defined."""


class ParseError(InvalidArgument):
    """Malformed factorization text."""


class NonPrimeBase(ParseError):
    def __init__(self, value):
        self.value = value
        super().__init__(f"non-prime base: {value}")


class DuplicatePrime(ParseError):
    def __init__(self, value):
        self.value = value
        super().__init__(f"duplicate prime: {value}")


class TooLargeToFactor(RobinkitError, ValueError):
    def __init__(self, n, budget):
        self.n = n
        self.budget = budget
        super().__init__(
            f"{n} exceeds the trial-division budget {budget}; "
            "supply the factorization directly"
        )


class BudgetExceeded(RobinkitError, MemoryError):
    """A sieve or table would exceed its configured memory budget."""
