import pytest

from iwahori_kit.affine_weyl import get_group
from iwahori_kit.config import get_settings
from iwahori_kit.hecke import get_algebra
from iwahori_kit.root_data import build_root_datum

SETTINGS_VARS = (
    "IWAHORI_BUDGET",
    "IWAHORI_LOG_LEVEL",
    "IWAHORI_CACHE_DIR",
    "IWAHORI_PRODUCT_CACHE_SIZE",
    "IWAHORI_PROGRESS",
)


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch):
    """Fresh Settings per test, no log file, no cache directory."""
    for name in SETTINGS_VARS:
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("IWAHORI_LOG_FILE", "")
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def gl2():
    return build_root_datum("GL", 2)


@pytest.fixture
def gl3():
    return build_root_datum("GL", 3)


@pytest.fixture
def gsp4():
    return build_root_datum("GSp", 2)


@pytest.fixture
def W_gl2():
    return get_group("GL", 2)


@pytest.fixture
def W_gl3():
    return get_group("GL", 3)


@pytest.fixture
def W_gsp4():
    return get_group("GSp", 2)


@pytest.fixture
def H_gl2():
    return get_algebra("GL", 2)


@pytest.fixture
def H_gl3():
    return get_algebra("GL", 3)


@pytest.fixture
def H_gsp4():
    return get_algebra("GSp", 2)


@pytest.fixture
def short_elements():
    """Elements of length <= max_length in the given Omega-components, built by left multiplication."""
    def build(W, max_length, omegas=(0,)):
        layer = {W.element_from_word([], k) for k in omegas}
        found = set(layer)
        for _ in range(max_length):
            layer = {
                W.multiply(s, x)
                for x in layer
                for s in W.simple_reflections()
                if W.length(W.multiply(s, x)) > W.length(x)
            }
            found |= layer
        return sorted(found, key=W.sort_key)
    return build
