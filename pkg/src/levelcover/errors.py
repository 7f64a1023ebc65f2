"""Exception hierarchy shared by all modules."""


class LevelCoverError(Exception):
    """Base class for every error raised by this package."""


class WordSyntaxError(LevelCoverError, ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text!r}")


class UnknownGenerator(LevelCoverError, ValueError):
    def __init__(self, name: str, alphabet=None):
        self.name = name
        self.alphabet = tuple(alphabet) if alphabet is not None else None
        extra = f" (alphabet: {', '.join(self.alphabet)})" if self.alphabet else ""
        super().__init__(f"unknown generator {name!r}{extra}")


class UnsupportedDepth(LevelCoverError, ValueError):
    pass


class BoundTooSmall(LevelCoverError, RuntimeError):
    pass


class GenusTooSmall(LevelCoverError, ValueError):
    pass


class GenusTooLarge(LevelCoverError, ValueError):
    pass


class BadSplit(LevelCoverError, ValueError):
    pass


class RelatorNotKilled(LevelCoverError, ValueError):
    pass


class CertificateConflict(LevelCoverError, RuntimeError):
    """Both a membership and a non-membership certificate were produced."""


class Disconnected(LevelCoverError, ValueError):
    pass


class Unstable(LevelCoverError, ValueError):
    def __init__(self, vertex: str, genus: int, valence: int):
        self.vertex = vertex
        super().__init__(
            f"vertex {vertex!r} is unstable: 2*{genus} - 2 + {valence} <= 0"
        )


class CutSystemInconsistent(LevelCoverError, RuntimeError):
    pass


class UnsupportedParams(LevelCoverError, ValueError):
    pass
