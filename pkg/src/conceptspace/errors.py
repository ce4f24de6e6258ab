"""Exception hierarchy shared by every module of the package."""


class ConceptSpaceError(Exception):
    """Base class for all domain errors.

    ``location`` is filled in by the document parser so that errors raised
    while building a space can point back into the source text.
    """

    location = None

    def __str__(self):
        msg = super().__str__()
        if self.location:
            return f"{self.location}: {msg}"
        return msg


class InvalidConstraint(ConceptSpaceError, ValueError):
    pass


class DuplicateVertexId(ConceptSpaceError):
    pass


class UnknownEndpoint(ConceptSpaceError):
    pass


class UnknownVertex(ConceptSpaceError, KeyError):
    def __str__(self):
        return ConceptSpaceError.__str__(self)


class UnknownEdge(ConceptSpaceError, KeyError):
    def __str__(self):
        return ConceptSpaceError.__str__(self)


class DuplicateEdge(ConceptSpaceError):
    pass


class CycleDetected(ConceptSpaceError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__(" -> ".join(self.cycle))


class SubsetViolation(ConceptSpaceError):
    def __init__(self, edge, extra):
        self.edge = tuple(edge)
        self.extra = frozenset(extra)
        u, v = self.edge
        super().__init__(
            f"content of {u} is not a subset of content of {v} "
            f"(extra: {sorted(self.extra)})"
        )


class EmptySpace(ConceptSpaceError):
    pass


class VacuousTheorem(ConceptSpaceError):
    pass


class TheoremViolation(AssertionError):
    """A non-axiom maximizer was found. Impossible for a valid DAG."""


# artifacts

class EmptySupport(ConceptSpaceError):
    pass


class WitnessNotInIntersection(ConceptSpaceError):
    pass


class UnknownHeader(ConceptSpaceError):
    pass


class MissingContent(ConceptSpaceError):
    pass


class DuplicateContent(ConceptSpaceError):
    pass


class EmptyArtifactList(ConceptSpaceError):
    pass


class EmptyIntersection(ConceptSpaceError):
    pass


class IntensionalSupport(ConceptSpaceError):
    pass


# transformations

class StepFailed(ConceptSpaceError):
    def __init__(self, index, error):
        self.index = index
        self.error = error
        super().__init__(f"step {index}: {type(error).__name__}: {error}")


class UnresolvableSubsetConflict(ConceptSpaceError):
    pass


# documents and corpus

class DocumentSyntaxError(ConceptSpaceError):
    def __init__(self, line, column, message):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class SchemaError(ConceptSpaceError):
    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class UnknownCorpusEntry(ConceptSpaceError, KeyError):
    def __str__(self):
        return ConceptSpaceError.__str__(self)


class InvalidParams(ConceptSpaceError, ValueError):
    pass
