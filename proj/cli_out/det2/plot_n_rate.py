import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

cov = np.genfromtxt("n_rate_cov.csv", delimiter=",", names=True, skip_header=1)
rate = np.genfromtxt("n_rate.csv", delimiter=",", names=True, skip_header=1)
fig, axes = plt.subplots(1, 2, figsize=(11, 4.5))

ref = cov[cov["N"] == 0]
axes[0].plot(ref["t"], ref["cov"], "k--", label="grid reference")
for N in np.unique(cov["N"]):
    if N == 0:
        continue
    rows = cov[cov["N"] == N]
    mean = {}
    for t, c in zip(rows["t"], rows["cov"]):
        mean.setdefault(t, []).append(c)
    ts = sorted(mean)
    axes[0].plot(ts, [np.mean(mean[t]) for t in ts], label=f"N = {int(N)}")
axes[0].set_xlabel("t")
axes[0].set_ylabel("covariance statistic")
axes[0].legend()

Ns = np.unique(rate["N"])
for col, marker in [("w1_sliced", "o"), ("w1_exact_coarse", "s")]:
    means = [np.mean(rate[rate["N"] == N][col]) for N in Ns]
    axes[1].loglog(Ns, means, marker + "-", label=col)
axes[1].set_xlabel("N")
axes[1].set_ylabel("terminal $W_1$ to the grid density")
axes[1].legend()
fig.tight_layout()
fig.savefig("n_rate.png", dpi=150)
print("wrote n_rate.png")
