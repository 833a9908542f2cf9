# !/usr/bin/env python
# -*- coding: utf-8 -*-
"""JSON output.

Floats are written with their shortest round-trip repr rather than a fixed
``%.17g``: both parse back to the identical double, so JSON and CSV output
carry the same precision.
"""

import json
import logging

import numpy as np

from .. import __version__
from ..protocol import Request, Response
from ..serializer import Serializer

logger = logging.getLogger('d2k.serializers.json')


def _plain(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError("%r is not JSON serializable" % (value,))


def envelope(data: dict, request: Request) -> dict:
    """Wraps a result into ``{version, config, seed, ...}``."""
    wrapped = {
        'version': __version__,
        'config': request.to_data(),
        'seed': request.seed,
    }
    wrapped.update(data)
    return wrapped


def dumps(data: dict) -> bytes:
    # float repr is the shortest string that parses back to the same double
    return (json.dumps(data, indent=2, default=_plain) + '\n').encode('utf-8')


class JsonSerializer(Serializer):
    """JSON serializer."""

    name = 'json'

    def serialize(self, response: Response, request: Request) -> bytes:
        return dumps(envelope(response.to_data(), request))

    def deserialize(self, data: bytes) -> dict:
        return json.loads(data)
