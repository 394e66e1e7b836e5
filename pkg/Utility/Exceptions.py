"""
Exception hierarchy shared by every protocol in the toolkit.

Verification routines never raise on a bad proof, they report a boolean or a
VerificationResult. The exceptions here are for parties that have to stop.
"""


class CollaborativeProverError(Exception):
    pass


class ProtocolAbort(CollaborativeProverError):
    """
    A party stopped the protocol. Every other protocol error derives from this,
    so a driver can catch a single type to map onto the protocol-abort exit code.
    """


class MacCheckFailed(ProtocolAbort):
    pass


class ProtocolDesync(ProtocolAbort):
    pass


class TransportTimeout(ProtocolAbort):
    pass


class ProofMismatch(ProtocolAbort):
    pass


class PreprocessingExhausted(CollaborativeProverError):
    pass


class UnsatisfiedAssignment(CollaborativeProverError, ValueError):
    pass


class DecodingError(CollaborativeProverError, ValueError):
    pass


class UsageError(CollaborativeProverError, ValueError):
    pass
