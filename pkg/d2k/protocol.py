import typing


class Request:
    def __init__(self, command: str, options: typing.Optional[dict] = None,
                 argv: typing.Optional[typing.List[str]] = None, seed: typing.Optional[int] = None):
        """A fully resolved subcommand invocation.

        :param command: Subcommand name the dispatcher looks up.
        :param options: Keyword arguments passed to the subcommand.
        :param argv: Command line that reproduces this request.
        :param seed: Resolved random seed, for commands that simulate.
        """
        self.__command = command
        self.__options = dict(options or {})
        self.__argv = list(argv or [])
        self.__seed = seed

    @property
    def command(self):
        return self.__command

    @property
    def options(self):
        return self.__options

    @property
    def argv(self):
        return self.__argv

    @property
    def seed(self):
        return self.__seed

    def to_data(self) -> dict:
        """Returns the provenance form of the request."""
        return {
            'command': self.command,
            'argv': self.argv,
            'options': self.options,
        }


class Response:
    """Base class for subcommand results.

    A response knows how to present itself as a JSON-ready dict, as a CSV
    table and, for scalar results, as bare text."""

    default_format = 'json'

    def to_data(self) -> dict:
        """Returns a dict form of the response."""
        raise NotImplementedError()

    def to_table(self) -> typing.Tuple[typing.List[str], typing.List[list]]:
        """Returns ``(header, rows)``."""
        raise NotImplementedError()

    def to_text(self) -> str:
        raise NotImplementedError()

    def sidecar(self) -> typing.Optional[dict]:
        """Extra provenance written next to table output, if any."""
        return None


class RecordResponse(Response):
    """A single flat record, one CSV row."""

    def __init__(self, record: dict):
        self.__record = record

    @property
    def record(self):
        return self.__record

    def to_data(self) -> dict:
        return dict(self.__record)

    def to_table(self):
        flat = _flatten(self.__record)
        return list(flat.keys()), [list(flat.values())]


class TableResponse(Response):
    """Rows under a fixed header."""

    default_format = 'csv'

    def __init__(self, header: typing.List[str], rows: typing.List[list], extra: typing.Optional[dict] = None):
        self.__header = list(header)
        self.__rows = [list(r) for r in rows]
        self.__extra = dict(extra or {})

    def to_data(self) -> dict:
        data = dict(self.__extra)
        data['rows'] = [dict(zip(self.__header, r)) for r in self.__rows]
        return data

    def to_table(self):
        return self.__header, self.__rows


def _flatten(record: dict, prefix: str = '') -> dict:
    flat = {}
    for key, value in record.items():
        name = prefix + key
        if isinstance(value, dict):
            flat.update(_flatten(value, name + '.'))
        elif isinstance(value, (list, tuple)):
            continue
        else:
            flat[name] = value
    return flat
