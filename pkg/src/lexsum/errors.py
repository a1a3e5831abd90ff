"""Exception hierarchy shared by all pipeline stages."""


class LexsumError(Exception):
    """Base class for data errors raised by the pipeline."""


class EmptyDocument(LexsumError):
    pass


class ParseError(LexsumError):
    def __init__(self, path, line_no, message):
        self.path = str(path)
        self.line_no = line_no
        super().__init__(f"{self.path}:{line_no}: {message}")


class MissingFile(LexsumError):
    pass


class ConfigError(LexsumError):
    pass


class UnknownSense(LexsumError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class UnknownWord(LexsumError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class IndexOutOfRange(LexsumError, IndexError):
    pass


class ZeroVector(LexsumError, ValueError):
    pass


class EmptyReference(LexsumError, ValueError):
    pass


class ManifestError(LexsumError):
    pass
