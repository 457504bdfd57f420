import numpy as np


def load_density(path):
    with open(path) as f:
        assert f.readline().startswith("# density snapshot")
        kv = {}
        for _ in range(7):
            key, _, val = f.readline().partition("=")
            kv[key.strip()] = float(val)
        z = np.loadtxt(f)
    nx, ny = int(kv["nx"]), int(kv["ny"])
    z = z.reshape(ny, nx)
    dx = (kv["x_max"] - kv["x_min"]) / nx
    dy = (kv["y_max"] - kv["y_min"]) / ny
    x = kv["x_min"] + dx * (np.arange(nx) + 0.5)
    y = kv["y_min"] + dy * (np.arange(ny) + 0.5)
    return x, y, z, kv["time"]

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

fig, axes = plt.subplots(1, 2, figsize=(11, 5), sharey=True)
panels = [("fv_final.dat", "grid solver"), ("particle_final.dat", "particle average")]
for ax, (path, title) in zip(axes, panels):
    x, y, z, t = load_density(path)
    cs = ax.contourf(x, y, z, levels=30, cmap="viridis")
    fig.colorbar(cs, ax=ax)
    ax.set_title(f"{title}, t = {t:g}")
    ax.set_xlabel("x")
    ax.set_aspect("equal")
axes[0].set_ylabel("y")
fig.tight_layout()
fig.savefig("contour.png", dpi=150)
print("wrote contour.png")
