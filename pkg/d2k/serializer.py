from .protocol import Request, Response


class Serializer:
    """Base class for all serializers."""

    name = None

    def serialize(self, response: Response, request: Request) -> bytes:
        """Serialize response."""
        raise NotImplementedError()

    def deserialize(self, data: bytes):
        """Deserialize serialized output."""
        raise NotImplementedError()
