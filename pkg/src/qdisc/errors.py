"""Exception hierarchy shared by all qdisc modules."""


class QDiscError(Exception):
    """Base class for every error raised by qdisc."""


class ConfigError(QDiscError, ValueError):
    pass


class NonConvergence(QDiscError, ArithmeticError):
    """A series or product reached ``max_terms`` before meeting its tolerance."""


class SingularParameter(QDiscError, ArithmeticError):
    """A parameter sits on (or too close to) a zero of a denominator."""


class PoleOfGamma(SingularParameter):
    pass


class PoleOfC(SingularParameter):
    pass


class CriticalLine(SingularParameter):
    """``Re l`` is too close to -1/2, where the resolvent kernel is not defined."""


class InternalInconsistency(QDiscError, ArithmeticError):
    """Two independent evaluation routes disagree beyond their tolerance."""


class NotOnLattice(QDiscError, ValueError):
    pass


class LatticeTooSmall(QDiscError, ValueError):
    pass


class LatticeMismatch(QDiscError, ValueError):
    pass


class EvaluationOutOfDomain(QDiscError, ValueError):
    pass


class IndexOutOfRange(QDiscError, IndexError):
    pass


class SupportTooWide(QDiscError, ValueError):
    pass


class ZeroFunction(QDiscError, ValueError):
    pass
