"""Exception hierarchy."""


class GaussForgeError(Exception):
    """Base class for all library errors."""


class FieldError(GaussForgeError, ValueError):
    pass


class FieldMismatchError(FieldError):
    pass


class PolySyntaxError(GaussForgeError, ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        if text:
            message = f"{message} at position {pos}\n  {text}\n  {' ' * pos}^"
        super().__init__(message)


class DimensionMismatchError(GaussForgeError, ValueError):
    pass


class NotHomogeneousError(GaussForgeError, ValueError):
    pass


class NotOnVarietyError(GaussForgeError, ValueError):
    pass


class SingularPointError(GaussForgeError, ValueError):
    pass


class BudgetExceededError(GaussForgeError):
    def __init__(self, needed: int, budget: int, what: str = "enumeration"):
        self.needed = needed
        self.budget = budget
        super().__init__(
            f"{what} needs about {needed:.3g} polynomial evaluations, budget is {budget:.3g}"
        )


class NoSmoothPointError(GaussForgeError):
    pass
