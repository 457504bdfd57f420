import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

rows = np.genfromtxt("coupling.csv", delimiter=",", names=True, skip_header=1)
fig, ax = plt.subplots(figsize=(6, 4.5))
for N in np.unique(rows["N"]):
    sel = rows[rows["N"] == N]
    mean = {}
    for t, g in zip(sel["t"], sel["mean_gap"]):
        mean.setdefault(t, []).append(g)
    ts = sorted(mean)
    ax.plot(ts, [np.mean(mean[t]) for t in ts], label=f"N = {int(N)}")
ax.set_xlabel("t")
ax.set_ylabel("mean coupled-pair gap")
ax.legend()
fig.tight_layout()
fig.savefig("coupling.png", dpi=150)
print("wrote coupling.png")
