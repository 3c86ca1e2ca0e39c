import subprocess

import pytest


def _run_bbsim(args, out_dir):
    result = subprocess.run(["bbsim"] + args + ["--out", str(out_dir)],
                            capture_output=True, text=True)
    assert result.returncode == 0, result.stderr
    return out_dir


@pytest.fixture(scope="session")
def roc_csv(tmp_path_factory):
    out = tmp_path_factory.mktemp("roc")
    _run_bbsim(["roc", "--set", "roc.trials=2000",
                "--set", "roc.p_fa_points=12", "--seed", "3"], out)
    return out / "roc.csv"


@pytest.fixture(scope="session")
def dynrange_csv(tmp_path_factory):
    out = tmp_path_factory.mktemp("dynrange")
    _run_bbsim(["dynrange", "--set", "dynrange.trials=20", "--seed", "3"], out)
    return out / "dynrange.csv"


@pytest.fixture
def captured_figures(monkeypatch):
    """Capture the figure handed to savefig so tests can inspect its contents."""
    import matplotlib.figure

    figures = []
    original = matplotlib.figure.Figure.savefig

    def recording_savefig(self, *args, **kwargs):
        figures.append(self)
        return original(self, *args, **kwargs)

    monkeypatch.setattr(matplotlib.figure.Figure, "savefig", recording_savefig)
    return figures
