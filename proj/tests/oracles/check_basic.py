import mpmath as mp
from prabhakar_series import prabhakar
mp.mp.dps = 30
print("E_{1/2,1}(-1)", prabhakar(0.5, 1, 1, -1), mp.e * mp.erfc(1))
for x in [0.1, 1, 2.5, 5]:
    print(x, prabhakar(0.5, 1, 1, -x).real - mp.exp(x**2) * mp.erfc(x))
# mode-solution oracle: alpha=0.6, lambda=1, t0=1, t=2
a = mp.mpf('0.6')
closed = prabhakar(a, 1, 1, -1).real - prabhakar(a, 1, 1, -(mp.mpf(2) ** a)).real
quad = mp.quad(lambda tau: (2 - tau) ** (a - 1) * prabhakar(a, a, 1, -(2 - tau) ** a, dps=30).real, [0, 0.5, 0.9, 0.99, 1])
print("u1(2) closed", closed, "quad", quad)
