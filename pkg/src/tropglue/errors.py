class TropGlueError(Exception):
    pass


class OutOfDomainError(TropGlueError, ValueError):
    pass


class InvalidContactError(TropGlueError, ValueError):
    pass


class FaceMismatchError(TropGlueError, ValueError):
    """A labeled end's point does not lie on its vertex's face."""


class DisconnectedError(TropGlueError, ValueError):
    pass


class GenericityError(TropGlueError):
    """The point configuration is not generic enough for enumeration."""


class MissingInvariantError(TropGlueError, KeyError):
    def __init__(self, key):
        super().__init__(key)
        self.key = key

    def __str__(self):
        face, profile, n_points = self.key
        prof = "; ".join(
            ",".join(f"{d}:{o}" for d, o in contacts) or "-" for contacts in profile
        )
        return f"no vertex invariant for face={face} contacts=[{prof}] n_points={n_points}"


class UnsupportedVertexError(TropGlueError, ValueError):
    pass


class NotRigidError(TropGlueError, ValueError):
    pass


class FormatError(TropGlueError, ValueError):
    pass
