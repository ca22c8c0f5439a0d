import json
import math

import numpy as np
import pandas as pd
import pytest

from orbitlab.core.model import PhysicalParams, SeparationConstants, PotentialKind
from orbitlab.orbits.trajectory import TRAJECTORY_COLUMNS, Trajectory
from orbitlab.utils.io import dumps_json, safe_save_csv, save_json, table_document

PARAMS = PhysicalParams(mu=1.0, kappa=20.0, rho=10.0)
CONSTS = SeparationConstants(3.0, 3.0, 2.0)


@pytest.fixture
def traj():
    theta = np.array([0.5, 1.0, math.pi / 2])
    phi = np.array([0.0, math.pi / 2, math.pi])
    return Trajectory.from_spherical(
        t=[0.0, 1.0, 2.0], r=[1.0, 2.0, 3.0], theta=theta, phi=phi,
        potential=PotentialKind.COTANGENT, params=PARAMS, consts=CONSTS,
        settings={"driver": "phi"},
    )


def test_cartesian_coordinates(traj):
    assert traj.x[0] == pytest.approx(math.sin(0.5))
    assert traj.y[0] == 0.0
    assert traj.y[1] == pytest.approx(2.0 * math.sin(1.0))
    assert traj.z[2] == pytest.approx(0.0, abs=1e-15)
    assert traj.cartesian.shape == (3, 3)
    np.testing.assert_allclose(np.linalg.norm(traj.cartesian, axis=1), traj.r)


def test_arrays_are_read_only(traj):
    for name in TRAJECTORY_COLUMNS:
        with pytest.raises(ValueError):
            getattr(traj, name)[0] = 1.0


def test_dataframe_and_metadata(traj):
    df = traj.to_dataframe()
    assert list(df.columns) == TRAJECTORY_COLUMNS
    assert len(traj) == 3
    metadata = traj.metadata()
    assert metadata["potential"] == "cotangent"
    assert metadata["n_samples"] == 3
    assert metadata["params"]["rho"] == 10.0
    assert metadata["constants"]["alpha_phi"] == 2.0
    assert metadata["settings"] == {"driver": "phi"}


def test_table_document_and_json(tmp_path, traj):
    document = table_document(traj.metadata(), "trajectory", traj.to_dataframe())
    assert isinstance(document["trajectory"][0]["x"], float)
    path = tmp_path / "out" / "traj.json"
    save_json(document, path)
    assert json.loads(path.read_text(encoding="utf-8")) == json.loads(dumps_json(document))


def test_json_writes_nan_as_null():
    assert json.loads(dumps_json({"a": math.nan, "b": [1.0, math.inf]})) == {"a": None, "b": [1.0, None]}


def test_csv_helpers(tmp_path, traj):
    path = tmp_path / "nested" / "traj.csv"
    safe_save_csv(traj.to_dataframe(), path)
    safe_save_csv(traj.to_dataframe(), path, backup=True)
    assert path.with_suffix(".csv.backup").exists()
    df = pd.read_csv(path, float_precision="round_trip")
    np.testing.assert_allclose(df["r"], traj.r, rtol=1e-15)
