"""Exception types.  Each carries the concrete witness that triggered it."""


class AlgebraError(ValueError):
    """Base class for every semantic error raised by the package."""


class NotAssociative(AlgebraError):
    def __init__(self, i, j, k):
        self.witness = (i, j, k)
        super().__init__(f"associativity fails at ({i}*{j})*{k} != {i}*({j}*{k})")


class NoIdentity(AlgebraError):
    def __init__(self, identity, witness):
        self.identity = identity
        self.witness = witness
        super().__init__(f"element {identity} is not a two-sided identity (fails against {witness})")


class NotAGroup(AlgebraError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"element {witness} has no two-sided inverse")


class NotAHomomorphism(AlgebraError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class NotASplitEpi(AlgebraError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"f(s(y)) != y for y = {witness}")


class PresentationTooLarge(AlgebraError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"presentation did not close within {cap} elements")


class BadSums(AlgebraError):
    def __init__(self, sums):
        self.sums = sums
        super().__init__(f"exponent sums must be (1, 1), got {sums}")


class NoUniformK(AlgebraError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"no exponent k with x*y = [x,y]^k x y for all pairs; first obstruction at {witness}")


class NotAntisymmetric(AlgebraError):
    def __init__(self, i, j):
        self.witness = (i, j)
        super().__init__(f"[e{i}, e{j}] != -[e{j}, e{i}]")


class JacobiFails(AlgebraError):
    def __init__(self, i, j, k):
        self.witness = (i, j, k)
        super().__init__(f"Jacobi identity fails on basis triple ({i}, {j}, {k})")


class NoAnsatzSolution(AlgebraError):
    def __init__(self, k):
        self.k = k
        super().__init__(f"no q(x,y) = x + a*y + b*[x,y] solves the loop equations for k = {k}")


class FormatError(AlgebraError):
    """Malformed input file; ``line``/``column`` are 1-based when known."""

    def __init__(self, message, line=None, column=None, path=None):
        self.line = line
        self.column = column
        self.path = path
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:{column or 0}:"
        super().__init__(f"{where} {message}".strip())
