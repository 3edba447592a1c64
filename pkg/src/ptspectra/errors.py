"""Exception types shared by the solver modules."""


class PreconditionError(ValueError):
    """An argument violates a documented precondition."""


class GammaPoleError(PreconditionError):
    """Gamma was evaluated at (or within 1e-14 of) a nonpositive integer."""


class NumericalFailure(ArithmeticError):
    """Integration or root refinement produced non-finite values."""
