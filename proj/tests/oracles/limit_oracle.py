"""High-precision reference values for limit-moment and J-integral tests.

Uses mpmath only. The two-sided recurrence is evaluated in its
unsymmetrized form (sum over k of Gamma(k a' + 1/2) ...), which is an
algebraically distinct route from the symmetrized form used in the library.
"""
from mpmath import mp, mpf, gamma, sqrt, pi, binomial, quad, log, factorial

mp.dps = 40


def two_sided_unsym(alpha, smax):
    ap = alpha + mpf(1) / 2
    m = [mpf(1), gamma(alpha - mpf(1) / 2) / (sqrt(2) * gamma(alpha))]
    for s in range(2, smax + 1):
        acc = mpf(0)
        for k in range(1, s):
            acc += binomial(s, k) * gamma(k * ap + mpf(1) / 2) * gamma((s - k) * ap - mpf(1) / 2) \
                / ((s * ap - 1) * gamma(s * ap - mpf(1) / 2)) * m[k] * m[s - k]
        acc /= 2 * sqrt(pi)
        acc += s * gamma(s * ap - 1) / (sqrt(2) * gamma(s * ap - mpf(1) / 2)) * m[s - 1]
        m.append(acc)
    return m


def one_sided(alpha, smax):
    ap = alpha + mpf(1) / 2
    out = [mpf(1)]
    for s in range(1, smax + 1):
        p = mpf(1)
        for j in range(1, s + 1):
            p *= gamma(j * ap) / gamma(j * ap + mpf(1) / 2)
        out.append(factorial(s) / mpf(2) ** (mpf(s) / 2) * p)
    return out


def J(s1, s2, s3):
    f = lambda x: (x * log(x) + (1 - x) * log(1 - x)) ** s1 * x ** (s2 - mpf(1) / 2) * (1 - x) ** (s3 - mpf(3) / 2)
    return quad(f, [0, mpf(1) / 4, mpf(1) / 2, mpf(3) / 4, 1])


def half(smax):
    m = [mpf(1), mpf(0)]
    for s in range(2, smax + 1):
        acc = mpf(0)
        for s1 in range(0, s + 1):
            for s2 in range(0, s - s1 + 1):
                s3 = s - s1 - s2
                if s2 >= s or s3 >= s:
                    continue
                mult = factorial(s) / (factorial(s1) * factorial(s2) * factorial(s3))
                acc += mult * (1 / sqrt(2 * pi)) ** s1 * m[s2] * m[s3] * J(s1, s2, s3)
        m.append(gamma(s - 1) / (2 * sqrt(pi) * gamma(s - mpf(1) / 2)) * acc)
    return m


if __name__ == "__main__":
    for a in (mpf(1), mpf(2), mpf(3) / 4, mpf(1) / 4):
        print("two-sided alpha", a, [mp.nstr(v, 20) for v in two_sided_unsym(a, 4)])
    for a in (mpf(0), mpf(1), mpf(1) / 2):
        print("one-sided alpha", a, [mp.nstr(v, 20) for v in one_sided(a, 4)])
    for t in [(0, 1, 1), (0, 2, 1), (1, 1, 0), (1, 0, 1), (2, 0, 0), (3, 0, 0), (2, 1, 0), (4, 0, 0), (1, 2, 1), (2, 1, 1), (1, 0, 3), (0, 3, 1), (0, 2, 2), (1, 3, 0)]:
        print("J", t, mp.nstr(J(*t), 20))
    print("half", [mp.nstr(v, 20) for v in half(4)])
