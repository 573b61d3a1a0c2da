"""
Exceptions raised by smpleak.

Everything derives from SmpError so callers (and the command line front end) can
catch the whole family at once. The command line maps them onto exit codes.
"""


class SmpError(Exception):
    """
    Base class of all smpleak errors
    """


class ValidationError(SmpError):
    """
    A table, parameter, file or pipeline stage is not valid.
    """

    def __init__(self, message, field=None, line=None, column=None):
        self.field = field
        self.line = line
        self.column = column
        where = []
        if field is not None:
            where.append("field {}".format(field))
        if line is not None:
            where.append("line {} column {}".format(line, column))
        if where:
            message = "{} ({})".format(message, ", ".join(where))
        super().__init__(message)


class EnumerationLimitExceeded(SmpError):
    """
    Exact enumeration would need more table cells than the configured cap.
    """

    def __init__(self, cells, cap, what='protocol'):
        self.cells = cells
        self.cap = cap
        super().__init__("{} needs {} cells for exact enumeration, cap is {}".format(what, cells, cap))


class CapacityNotConverged(SmpError):
    """
    Blahut-Arimoto did not close the capacity bracket within max_iter iterations.
    """

    def __init__(self, lower, upper, iterations):
        self.lower = lower
        self.upper = upper
        self.iterations = iterations
        super().__init__("capacity bracket [{:.12g}, {:.12g}] still open after {} iterations".format(
            lower, upper, iterations))


class SearchFailure(SmpError):
    """
    A randomized derandomization search exhausted its restarts.
    """

    def __init__(self, what, restarts, best_error=None):
        self.restarts = restarts
        self.best_error = best_error
        message = "{}: no verified candidate after {} restarts".format(what, restarts)
        if best_error is not None:
            message += " (best error {:.12g})".format(best_error)
        super().__init__(message)


class UnsupportedOperation(SmpError):
    """
    The operation is not defined for this kind of protocol.
    """
