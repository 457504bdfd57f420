import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

data = np.genfromtxt("norms.csv", delimiter=",", names=True, skip_header=1)
fig, axes = plt.subplots(1, 2, figsize=(11, 4.5))
for D in np.unique(data["D"]):
    rows = data[data["D"] == D]
    axes[0].plot(rows["t"], rows["l2"], label=f"D = {D:g}")
    axes[1].plot(rows["t"], rows["linf"], label=f"D = {D:g}")
axes[0].set_ylabel(r"$\|\rho\|_{L^2}$")
axes[1].set_ylabel(r"$\|\rho\|_{L^\infty}$")
for ax in axes:
    ax.set_xlabel("t")
    ax.legend()
fig.tight_layout()
fig.savefig("norms.png", dpi=150)
print("wrote norms.png")
