"""Exception types shared across the package."""


class GmVerifyError(Exception):
    pass


class NotPrime(GmVerifyError, ValueError):
    """Raised when a base that must be prime is not."""

    def __init__(self, value: int):
        super().__init__(f"{value} is not prime")
        self.value = value


class InvalidInput(GmVerifyError, ValueError):
    pass


class IncompleteFactorization(GmVerifyError):
    """Factorization ran out of budget; ``cofactor`` is the unresolved part."""

    def __init__(self, n: int, cofactor: int):
        super().__init__(
            f"could not completely factor {n}: cofactor {cofactor} unresolved within budget"
        )
        self.n = n
        self.cofactor = cofactor
