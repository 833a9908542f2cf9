import inspect
import logging
from collections import namedtuple

from . import exceptions
from .protocol import Request, Response

logger = logging.getLogger('d2k.dispatcher')

MethodParams = namedtuple('MethodParams', ('method', 'forward_request'))


class Dispatcher:
    """Stores name-to-command mappings."""

    def __init__(self):
        self.method_map = {}

    def add_method(self, f, *, name=None, forward_request=False):
        """Add a command to the dispatcher.

        :param f: Callable to be added.
        :param name: Name to register it with. If ``None``, ``f.__name__`` will
                     be used.
        :param forward_request: Pass the :py:class:`~d2k.protocol.Request`
                                itself as the first argument.
        """
        assert callable(f), "method argument must be callable"
        if not name:
            name = f.__name__

        if name in self.method_map:
            raise exceptions.InternalError("command %s already registered" % name)

        self.method_map[name] = MethodParams(f, forward_request)

    @property
    def names(self):
        return sorted(self.method_map)

    def get_method(self, name) -> MethodParams:
        """Retrieve a previously registered command.

        :raises KeyError: if nothing is registered under ``name``.
        """
        return self.method_map[name]

    def dispatch(self, request: Request) -> Response:
        """Fully handle request.

        Looks the command up, checks the options against its signature and
        calls it. Library errors propagate unchanged; any other exception is
        logged and replaced by :py:exc:`~d2k.exceptions.InternalError`.
        """
        try:
            method = self.get_method(request.command)
        except KeyError:
            raise exceptions.CommandNotFoundError("unknown command %r" % request.command)

        try:
            sig = inspect.signature(method.method)
            if method.forward_request:
                sig.bind(request, **request.options)
            else:
                sig.bind(**request.options)
        except TypeError as e:
            raise exceptions.InvalidParamsError("%s: %s" % (request.command, e))

        try:
            if method.forward_request:
                return method.method(request, **request.options)
            return method.method(**request.options)
        except exceptions.BaseError:
            raise
        except MemoryError as e:
            raise exceptions.ResourceError("%s ran out of memory: %s" % (request.command, e))
        except Exception as e:
            logger.exception("command %s failed", request.command)
            raise exceptions.InternalError("%s failed: %s: %s" % (request.command, type(e).__name__, e))

    def public(self, name=None, forward_request=False):
        """Convenient decorator.

        .. code-block:: python

            commands = Dispatcher()

            @commands.public('var-bounds')
            def var_bounds(eta, n, m, k):
                # ...

        :param name: Name to register callable with
        """
        if callable(name):
            self.add_method(name)
            return name

        def _(f):
            self.add_method(f, name=name, forward_request=forward_request)
            return f

        return _
