"""Brute-force scan of |exp(2 pi i n / alpha) - exp(i y)| (test oracle)."""
import mpmath as mp
mp.mp.dps = 40


def first_hit(alpha, y, eps, n_max):
    for n in range(1, n_max + 1):
        if abs(mp.expj(2 * mp.pi * n / alpha) - mp.expj(y)) < eps:
            return n
    return None


alpha = 1 / mp.sqrt(2)
print("y=0 eps=0.01:", first_hit(alpha, 0, 0.01, 2000))
ys = [2 * mp.pi * j / 8 + 0.1 for j in range(8)]
for y in ys:
    print(float(y), first_hit(alpha, y, 0.01, 5000))
