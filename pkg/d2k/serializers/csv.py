# !/usr/bin/env python
# -*- coding: utf-8 -*-

import numbers

from ..protocol import Request, Response
from ..serializer import Serializer

SEPARATOR = ','
LINE_END = '\n'


def format_cell(value) -> str:
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        return '%.17g' % value
    return str(value)


class CsvSerializer(Serializer):
    """Comma separated values, no quoting, floats at 17 significant digits."""

    name = 'csv'

    def serialize(self, response: Response, request: Request) -> bytes:
        header, rows = response.to_table()
        lines = [SEPARATOR.join(header)]
        lines.extend(SEPARATOR.join(format_cell(v) for v in row) for row in rows)
        return (LINE_END.join(lines) + LINE_END).encode('ascii')

    def deserialize(self, data: bytes):
        """Returns ``(header, rows)`` with every cell as a string."""
        lines = data.decode('ascii').splitlines()
        if not lines:
            return [], []
        return lines[0].split(SEPARATOR), [line.split(SEPARATOR) for line in lines[1:]]
