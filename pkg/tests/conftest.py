from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from dwtsteg import parse_pbm, parse_pgm

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

settings.register_profile(
    "repro",
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repro")


@pytest.fixture(scope="session")
def cover():
    return parse_pgm((DATA_DIR / "cover_camera_256.pgm").read_bytes())


@pytest.fixture(scope="session")
def secret1():
    return parse_pbm((DATA_DIR / "secret1_disc_32.pbm").read_bytes())


@pytest.fixture(scope="session")
def secret2():
    return parse_pbm((DATA_DIR / "secret2_stripes_32.pbm").read_bytes())
