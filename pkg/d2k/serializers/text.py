from ..protocol import Request, Response
from ..serializer import Serializer


class TextSerializer(Serializer):
    name = 'text'

    def serialize(self, response: Response, request: Request) -> bytes:
        return (response.to_text() + '\n').encode('utf-8')

    def deserialize(self, data: bytes) -> str:
        return data.decode('utf-8').strip()
