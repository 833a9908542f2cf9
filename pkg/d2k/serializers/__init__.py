from .json import JsonSerializer
from .csv import CsvSerializer
from .text import TextSerializer

SERIALIZERS = {s.name: s for s in (TextSerializer, CsvSerializer, JsonSerializer)}


def get_serializer(name: str):
    return SERIALIZERS[name]()
