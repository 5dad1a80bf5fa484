"""Smoke test for the alexlab_py extension.

Run after `cargo build -p alexlab-py` (or with the module installed):

    python3 crates/py/python/smoke.py [path/to/libalexlab_py.so]
"""

import importlib.util
import json
import shutil
import sys
import tempfile
from pathlib import Path


def load():
    try:
        import alexlab_py

        return alexlab_py
    except ImportError:
        pass
    root = Path(__file__).resolve().parents[3]
    candidates = [Path(a) for a in sys.argv[1:]] + [
        root / "target" / profile / "libalexlab_py.so" for profile in ("release", "debug")
    ]
    lib = next((c for c in candidates if c.exists()), None)
    if lib is None:
        sys.exit("libalexlab_py.so not found; build it with `cargo build -p alexlab-py`")
    # the import machinery wants the module name as the file stem
    target = Path(tempfile.mkdtemp()) / "alexlab_py.so"
    shutil.copy(lib, target)
    spec = importlib.util.spec_from_file_location("alexlab_py", target)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    ax = load()

    ab = json.loads(ax.abelianize("<a,b | a^2, b^2>"))
    assert ab["schema"] == "alexlab/1"
    assert ab["rank"] == 0 and ab["torsion"] == [2, 2], ab

    theta = json.loads(ax.chen("builtin:free(2)", 5))["theta"]
    assert theta == [2, 1, 2, 3, 4], theta
    assert json.loads(ax.chen("builtin:free(2)", 5, "crowell"))["theta"] == theta

    klein = "builtin:klein_bottle"
    assert json.loads(ax.cv_member(klein, "free=[-1];torsion=[1]"))["member"]
    assert not json.loads(ax.cv_member(klein, "free=[-1];torsion=[-1]"))["member"]

    ideal = json.loads(ax.cv_ideal("builtin:trefoil", 1))["ideal"]
    assert ideal["generators"] == ["t^2 - t + 1"], ideal

    rep = json.loads(ax.check_extension("tree:path:3", 4, 2))
    assert rep["verdict"] == "EQUAL_FROM_2" and rep["passed"], rep

    try:
        ax.abelianize("<a | a^>")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed input accepted")

    print("alexlab_py", ax.__version__, "smoke test passed")


if __name__ == "__main__":
    main()
