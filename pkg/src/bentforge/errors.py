"""Exception hierarchy shared by every bentforge module."""

from __future__ import annotations


class BentforgeError(Exception):
    """Base class; ``witness`` carries whatever made the check fail."""

    def __init__(self, msg: str = "", witness=None):
        super().__init__(msg)
        self.witness = witness


# galois
class NotPrime(BentforgeError):
    pass


class NotIrreducible(BentforgeError):
    pass


class DegreeMismatch(BentforgeError):
    pass


class FieldMismatch(BentforgeError):
    pass


class NotADivisor(BentforgeError):
    pass


# spaces
class SpaceMismatch(BentforgeError):
    pass


class PrimeMismatch(BentforgeError):
    pass


# walsh
class OddDimensionOddPrime(BentforgeError):
    pass


class MalformedSpectrum(BentforgeError):
    pass


class NotWeaklyRegular(BentforgeError):
    pass


# vectorial
class ZeroComponent(BentforgeError):
    pass


class DimensionViolation(BentforgeError):
    pass


class EmptyIndexSet(BentforgeError):
    pass


class ConditionAFailed(BentforgeError):
    pass


# semifield
class PresemifieldAxiomError(BentforgeError):
    pass


class ZeroDivisor(PresemifieldAxiomError):
    pass


class NotLeftDistributive(PresemifieldAxiomError):
    pass


class NotRightDistributive(PresemifieldAxiomError):
    pass


class ZeroAlpha(BentforgeError):
    pass


class NoSolution(BentforgeError):
    pass


# constructions
class NotAPermutation(BentforgeError):
    pass


class BadParameters(BentforgeError):
    pass


class InvalidParams(BentforgeError):
    pass


class GcdObstruction(InvalidParams):
    pass


class FamilyEpsilonMismatch(BentforgeError):
    pass


class DependentAlphaBeta(BentforgeError):
    pass


class BadR(BentforgeError):
    pass


class CapExceeded(BentforgeError):
    pass


# partitions / pds
class NotDivisible(BentforgeError):
    pass


class BadRegime(BentforgeError):
    pass


class PartitionFunctionMismatch(BentforgeError):
    pass


class IrrationalCharacterValue(BentforgeError):
    pass


class InvalidPartition(BentforgeError):
    pass


# cli
class ParseError(BentforgeError):
    pass
