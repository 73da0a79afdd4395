"""Independent reference values frozen into the C++ tests.

Everything here uses sympy factorization, exact fractions or mpmath; none of
it shares code with the C++ library. Run with `python3 reference_values.py`.
"""
from fractions import Fraction as F
import cmath
import math

import mpmath as mp
from sympy import factorint, primerange

NMAX = 10**4 + 200
OMEGA = [0] * (NMAX + 1)
DISTINCT = [0] * (NMAX + 1)
for n in range(2, NMAX + 1):
    f = factorint(n)
    OMEGA[n] = sum(f.values())
    DISTINCT[n] = len(f)


def lam(n):
    return -1 if OMEGA[n] % 2 else 1


def show(name, value):
    print(f"{name} = {value!r}")


# averaging
H10 = sum(F(1, n) for n in range(1, 11))
show("log_avg_liouville_10", float(sum(F(lam(n), n) for n in range(1, 11)) / H10))
show("harmonic_10", float(H10))


def decompose(values, eps):
    n = len(values)
    lhs = sum(F(values[k - 1]) / k for k in range(1, n + 1)) / sum(F(1, k) for k in range(1, n + 1))
    m_lo = math.floor(n ** eps) + 1
    num = F(0)
    mass = F(0)
    prefix = F(0)
    for m in range(1, n):
        prefix += values[m - 1]
        if m >= m_lo:
            num += prefix / m / m
            mass += F(1, m)
    return float(lhs), float(num / mass)


show("decompose_indicator_1000", decompose([1] + [0] * 999, 0.1))
show("decompose_alternating_10000", decompose([(-1) ** n for n in range(1, 10001)], 0.1))

# densities and Erdos-Kac at N = 10^4
N = 10**4
mu = math.log(math.log(N))
sigma = math.sqrt(mu)
counts = {}
for n in range(1, N + 1):
    counts[OMEGA[n]] = counts.get(OMEGA[n], 0) + 1
ks = 0.0
below = 0
for ell in range(0, max(counts) + 2):
    phi = float(mp.ncdf((ell - mu) / sigma))
    left = below / N
    below += counts.get(ell, 0)
    ks = max(ks, abs(below / N - phi), abs(left - phi))
show("ks_10000", ks)
mp.mp.dps = 40
ll8 = mp.log(mp.log(mp.mpf(10) ** 8))
show("gaussian_x3_1e8", float(mp.exp(-((3 - ll8) ** 2) / (2 * ll8)) / mp.sqrt(2 * mp.pi * ll8)))

# Turan-Kubilius with P = primes <= 100 at N = 10^4
P = list(primerange(2, 101))
S = sum(F(1, p) for p in P)
lhs = sum(abs(sum(1 for p in P if n % p == 0) - S) for n in range(1, N + 1)) / N
show("turan_lhs_p100_10000", float(lhs))

# correlations at N = 10^4
def cesaro(f, n=N):
    return sum(f(k) for k in range(1, n + 1)) / n


def logavg(f, n=N):
    return sum(F(1, k) * f(k) for k in range(1, n + 1)) / sum(F(1, k) for k in range(1, n + 1))


show("parity_log_corr_10000", float(logavg(lambda n: lam(n) * lam(n + 1))))
show("parity_3pt_cesaro_10000", cesaro(lambda n: lam(n) * lam(n + 1) * lam(n + 2)))
# theorem C sum for parity at N = 10^4
mean = F(sum(lam(n) for n in range(1, N + 1)), N)
total = F(0)
for ell in sorted(counts):
    members = [n for n in range(1, N + 1) if OMEGA[n] == ell]
    cond = sum(F(lam(n + 1), n) for n in members) / sum(F(1, n) for n in members)
    total += F(len(members), N) * abs(cond - mean)
show("theorem_c_parity_10000", float(total))
# prime shift identity, window {2}, parity
rhs = logavg(lambda n: (0 if OMEGA[n] == 0 else (-1) ** (OMEGA[n] - 1)) * (-1) ** (OMEGA[n + 2] - 1))
show("prime_shift_rhs_window2_10000", float(rhs))
# mean of Omega - omega over [10^4]
show("omega_minus_distinct_10000", sum(OMEGA[n] - DISTINCT[n] for n in range(1, N + 1)) / N)

# reduced sum, window {2, 3}, N = 10^4, xi = 1 and xi = 3 (|I_N| from the frequency family)
lln = math.log(math.log(N))
A = 4 * lln ** (1 / 9)
X = A * math.sqrt(lln)
size = math.floor(X) - (math.floor(-X) + 1) + 1
show("I_N_size_10000", size)
Hn = sum(1.0 / n for n in range(1, N + 1))
for xi in (1, 3):
    z = cmath.exp(2j * math.pi * xi / size)
    c = sum(z ** OMEGA[m] / m for m in range(1, N + 1)) / Hn
    L = 1 / 2 + 1 / 3
    acc = math.fsum(abs((z ** OMEGA[n + 2] / 2 + z ** OMEGA[n + 3] / 3) / L - c) ** 2 / n for n in range(1, N + 1))
    show(f"reduced_term_window23_xi{xi}_10000", acc / Hn)

# distances
primes10 = list(primerange(2, 11))
show("dist_liouville_10", math.sqrt(sum(2 / p for p in primes10)))
chi3 = {1: 1, 2: -1, 0: 0}
show("twisted_mod3_10", math.sqrt(sum((1 - chi3[p % 3]) / p for p in primes10)))
primes4 = list(primerange(2, N + 1))
d = math.fsum((1 - math.cos(math.log(p))) / p for p in primes4)
show("dist_residual_xi0_t1_10000", abs(d - math.log(1 + math.log(N))))

# windows
show("window_10_100_L", float(sum(F(1, p) for p in primerange(10, 101))))
