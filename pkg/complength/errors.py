class DegreeMismatchError(ValueError):
    pass


class DegreeCapExceeded(ValueError):
    def __init__(self, degree, cap, what='degree'):
        super().__init__(f"{what} {degree} exceeds the degree cap {cap}")
        self.degree = degree
        self.cap = cap


class OracleCapExceeded(ValueError):
    def __init__(self, order, cap):
        super().__init__(f"group order {order} exceeds the oracle cap {cap}")
        self.order = order
        self.cap = cap


class RangeError(ValueError):
    pass


class NotInGroupError(ValueError):
    pass


class NotNormalError(ValueError):
    pass


class NotInvariantError(ValueError):
    pass


class SpecParseError(ValueError):
    pass


class GroupFileError(ValueError):
    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class NotCompletelyReducible(ValueError):
    def __init__(self, message='complete reducibility not certified', witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetExhausted(RuntimeError):
    pass
