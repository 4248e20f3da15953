import os
import subprocess
import sys

import pytest

# allow running the suite from a fresh checkout without installing
_SRC = os.path.join(os.path.dirname(__file__), "..", "src")
sys.path.insert(0, _SRC)


@pytest.fixture
def run_cli():
    """Invoke the command-line interface in a subprocess."""

    def _run(*args, cwd=None, env_extra=None):
        env = os.environ.copy()
        env["PYTHONPATH"] = os.path.abspath(_SRC) + os.pathsep + env.get("PYTHONPATH", "")
        if env_extra:
            env.update(env_extra)
        return subprocess.run(
            [sys.executable, "-m", "isoquant", *args],
            cwd=cwd,
            env=env,
            capture_output=True,
            text=True,
        )

    return _run
