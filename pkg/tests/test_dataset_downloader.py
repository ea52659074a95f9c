import pytest
import requests

import dataset_downloader
from dataset_downloader import DatasetDownloader, is_remote


class FakeResponse:
    def __init__(self, content: bytes, status: int = 200):
        self.content = content
        self.status = status

    def raise_for_status(self):
        if self.status >= 400:
            raise requests.HTTPError(f"status {self.status}")


@pytest.fixture
def fake_get(monkeypatch):
    calls = []

    def install(response):
        def get(url, timeout):
            calls.append(url)
            return response
        monkeypatch.setattr(dataset_downloader.requests, "get", get)
        return calls
    return install


def test_is_remote():
    assert is_remote("https://example.org/data/sqlite.csv")
    assert not is_remote("fixtures/sqlite.csv")


def test_download_is_cached(tmp_path, fake_get):
    calls = fake_get(FakeResponse(b"x,t:min,a:min\n0,1,2\n"))
    downloader = DatasetDownloader(tmp_path / "cache")
    url = "https://example.org/data/sqlite.csv"
    first = downloader.download(url)
    second = downloader.download(url)
    assert first == second
    assert first.read_bytes() == b"x,t:min,a:min\n0,1,2\n"
    assert first.name.startswith("sqlite-")
    assert calls == [url]


def test_cache_names_differ_per_url(tmp_path):
    downloader = DatasetDownloader(tmp_path)
    assert downloader.cache_path("https://a.org/x.csv") != \
        downloader.cache_path("https://b.org/x.csv")


def test_http_error_leaves_no_cache_file(tmp_path, fake_get):
    fake_get(FakeResponse(b"", status=404))
    downloader = DatasetDownloader(tmp_path)
    with pytest.raises(requests.HTTPError):
        downloader.download("https://example.org/missing.csv")
    assert list(tmp_path.iterdir()) == []
