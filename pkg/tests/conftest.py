import os
import tempfile

# keep generated-entry caching away from the user's real cache directory;
# shipped package data still provides the pre-computed entries
os.environ.setdefault("DHWP_CACHE", tempfile.mkdtemp(prefix="dhwp-test-cache-"))

import pytest

from dhwp.atlas import Atlas


@pytest.fixture(scope="session")
def atlas() -> Atlas:
    return Atlas()
