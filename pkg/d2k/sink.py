import logging
import sys
import typing

from .exceptions import UsageError

logger = logging.getLogger('d2k.sink')


class Sink:
    """Base class for output destinations."""

    def write(self, data: bytes):
        raise NotImplementedError()


class StreamSink(Sink):
    """Writes to a binary stream, stdout by default."""

    def __init__(self, stream: typing.Optional[typing.BinaryIO] = None):
        self.__stream = stream

    def write(self, data: bytes):
        stream = self.__stream if self.__stream is not None else sys.stdout.buffer
        stream.write(data)
        stream.flush()


class FileSink(Sink):
    """Writes to a file, replacing its contents."""

    def __init__(self, path: str):
        self.__path = path

    def write(self, data: bytes):
        try:
            with open(self.__path, 'wb') as f:
                f.write(data)
        except OSError as e:
            raise UsageError("cannot write %s: %s" % (self.__path, e.strerror or e))
        logger.info("wrote %d bytes to %s", len(data), self.__path)


def open_sink(path: typing.Optional[str], stream: typing.Optional[typing.BinaryIO] = None) -> Sink:
    """``FileSink`` for a path, ``StreamSink`` for ``None`` or ``-``."""
    if path is None or path == '-':
        return StreamSink(stream)
    return FileSink(path)


def sidecar_path(out: typing.Optional[str], sidecar: typing.Optional[str]) -> typing.Optional[str]:
    """Where provenance goes next to table output: explicit path, else ``<out>.json``, else nowhere."""
    if sidecar:
        return sidecar
    if out and out != '-':
        return out + '.json'
    return None
