import math

import matplotlib.pyplot as plt

from orbitlab.orbits.cotangent import (
    cone_geometry,
    cotangent_constants,
    phi_for_radial_periods,
    sample_orbit_cotangent,
)
from orbitlab.orbits.kibler import quadric_surface, sample_orbit_kibler
from orbitlab.plotting.orbit import OrbitPlotter

from .conftest import load_figure


def test_cone_plot_written(tmp_path, fig1a):
    params, consts, _ = fig1a
    phi_max = phi_for_radial_periods(cotangent_constants(params, consts), 2.0)
    traj = sample_orbit_cotangent(params, consts, phi_max, 400)
    path = tmp_path / "plots" / "fig1a.svg"
    fig = OrbitPlotter().plot_orbit(traj, title="fig1a", save_path=str(path),
                                    surface=cone_geometry(params, consts))
    assert path.exists()
    assert "<svg" in path.read_text(encoding="utf-8")
    assert len(fig.axes) == 2
    assert not plt.fignum_exists(fig.number)


def test_quadric_plot_written_with_dark_style(tmp_path):
    params, consts, _ = load_figure("fig4b")
    traj = sample_orbit_kibler(params, consts, 4 * math.pi, 400)
    path = tmp_path / "fig4b.svg"
    OrbitPlotter(style="dark").plot_orbit(traj, save_path=str(path),
                                          surface=quadric_surface(params, consts))
    assert path.stat().st_size > 0


def test_plot_without_saving(fig3a):
    params, consts, _ = fig3a
    traj = sample_orbit_kibler(params, consts, 2 * math.pi, 50)
    fig = OrbitPlotter().plot_orbit(traj)
    assert fig.axes[0].get_xlabel() == "x"
    assert fig.axes[1].get_title() == "xy projection"
