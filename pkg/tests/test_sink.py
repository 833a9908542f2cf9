import io

import pytest

from d2k.exceptions import UsageError
from d2k.sink import FileSink, StreamSink, open_sink, sidecar_path


def test_stream_sink():
    stream = io.BytesIO()
    sink = open_sink(None, stream)
    assert isinstance(sink, StreamSink)
    sink.write(b'k,g,G\n')
    sink.write(b'0,1,1\n')
    assert stream.getvalue() == b'k,g,G\n0,1,1\n'
    assert isinstance(open_sink('-', stream), StreamSink)


def test_file_sink_replaces_contents(tmp_path):
    path = tmp_path / 'out.csv'
    path.write_bytes(b'old')
    sink = open_sink(str(path))
    assert isinstance(sink, FileSink)
    sink.write(b'new\n')
    assert path.read_bytes() == b'new\n'


def test_file_sink_unwritable(tmp_path):
    with pytest.raises(UsageError) as info:
        FileSink(str(tmp_path / 'missing' / 'out.csv')).write(b'x')
    assert info.value.exit_code == 2
    assert 'cannot write' in info.value.message


@pytest.mark.parametrize('out, sidecar, expected', [
    ('grid.csv', None, 'grid.csv.json'),
    ('grid.csv', 'meta.json', 'meta.json'),
    (None, 'meta.json', 'meta.json'),
    (None, None, None),
    ('-', None, None),
])
def test_sidecar_path(out, sidecar, expected):
    assert sidecar_path(out, sidecar) == expected
