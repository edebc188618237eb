"""Independent high-precision oracles for the frozen constants in the C++ tests.

Run with: python3 tests/oracles/freeze_values.py
Every value printed here is pasted verbatim into the unit/acceptance tests.
Nothing in this file shares code with the C++ implementation.
"""
import mpmath as mp

mp.mp.dps = 40


def show(label, v):
    if isinstance(v, mp.mpc):
        print(f"{label}: {mp.nstr(v.real, 20)} {mp.nstr(v.imag, 20)}")
    else:
        print(f"{label}: {mp.nstr(v, 20)}")


# complex erf on the Fresnel ray and a few off-ray points
ray = mp.exp(-1j * mp.pi / 4)
for r in ["0.1", "1", "2.5", "3", "3.9", "4.1", "6", "20"]:
    show(f"erf(r*e^(-i pi/4)) r={r}", mp.erf(mp.mpf(r) * ray))
for z in [mp.mpc(0.5, 0.25), mp.mpc(2, -1), mp.mpc(5, 3), mp.mpc(-3, 2)]:
    show(f"erf({z})", mp.erf(z))

# scaled complementary error function erfcx(z) = exp(z^2) erfc(z)
for r in ["3", "10"]:
    z = mp.mpf(r) * ray
    show(f"erfcx(r*e^(-i pi/4)) r={r}", mp.exp(z * z) * mp.erfc(z))

# Fresnel: int_R exp(i x^2/2) dx
show("fresnel", mp.quadosc(lambda x: mp.exp(0.5j * x * x), [0, mp.inf], zeros=lambda n: mp.sqrt(2 * mp.pi * n)) * 2)

# canonical bump integral on [-1, 1]
bump = lambda u: mp.exp(-1 / (1 - u * u)) if abs(u) < 1 else mp.mpf(0)
show("bump integral", mp.quad(bump, [-1, 0, 1]))

# escape time for V=-x^4, E=1: tan substitution and closed form
esc = mp.quad(lambda th: (1 / mp.cos(th) ** 2) / mp.sqrt(1 + mp.tan(th) ** 4), [0, mp.pi / 4, mp.pi / 2])
show("escape time tan-substitution", esc)
show("escape time closed form", mp.gamma(0.25) ** 2 / (4 * mp.sqrt(mp.pi)))


def K(x, y, dt):
    return mp.exp(-1j * mp.pi / 4) / mp.sqrt(2 * mp.pi * dt) * mp.exp(1j * (x - y) ** 2 / (2 * dt))


# free gaussian sigma=1 evolved to t=1, brute-force convolution with the kernel
sigma = mp.mpf(1)
psi0 = lambda y: (2 * mp.pi * sigma**2) ** (-0.25) * mp.exp(-y * y / (4 * sigma**2))
val = mp.quad(lambda y: K(0, y, 1) * psi0(y), [-mp.inf, 0, mp.inf])
show("free gaussian psi(0,1)", val)
show("free gaussian |psi(0,1)|^2", abs(val) ** 2)

# transition probability, one interior bounded window, fixed end
# times 0 < 0.4 < 1, window (-0.5, 1], x0 = 0, x_end = 0.3
g1 = mp.quad(lambda x1: K(0.3, x1, 0.6) * K(x1, 0, 0.4), [-0.5, 1])
show("G fixed end window(-0.5,1] t1=0.4 T=1 xend=0.3", g1)

# free end, two bounded windows: (-0.5,1] at t=0.4 and (0,2] at T=1, 2-D brute force
g2 = mp.quad(lambda x1, x2: K(x2, x1, 0.6) * K(x1, 0, 0.4), [-0.5, 1], [0, 2])
show("G free end windows (-0.5,1],(0,2] t1=0.4 T=1", g2)

# complex probability exceeding one: t=0.02, t1=0.01, window (-0.3,0.3], x0=x_end=0
g3 = mp.quad(lambda x1: K(0, x1, 0.01) * K(x1, 0, 0.01), [-0.3, 0, 0.3])
show("G short time window(-0.3,0.3]", g3)

# free spreading of a packet with |psi|^2 standard deviation 0.05:
# <f, U^t f> = (1 + i t / (4 sigma^2))^{-1/2}, deviation = sqrt(2 - 2 Re <f, U^t f>)
s = mp.mpf("0.05")
for t in ["0.1", "0.01", "0.001"]:
    ov = (1 + 1j * mp.mpf(t) / (4 * s * s)) ** mp.mpf(-0.5)
    show(f"green deviation sigma=0.05 t={t}", mp.sqrt(2 - 2 * mp.re(ov)))

# Lie splitting of the harmonic ground state, independent numpy split-step
import numpy as np

for N, L in [(512, 24.0), (1024, 32.0)]:
    x = -L / 2 + np.arange(N) * L / N
    k = 2 * np.pi * np.fft.fftfreq(N, L / N)
    f = np.pi**-0.25 * np.exp(-x**2 / 2)
    for n in [128, 300]:
        dt = 1.0 / n
        psi = f.astype(complex)
        for _ in range(n):
            psi = np.fft.ifft(np.exp(-0.5j * k**2 * dt) * np.fft.fft(psi * np.exp(-0.5j * dt * x**2)))
        err = np.sqrt(L / N * np.sum(np.abs(psi - np.exp(-0.5j) * f) ** 2))
        print(f"lie ground-state L2 error N={N} n={n}: {err:.12e}")
