"""Independent high-precision reference values computed with mpmath."""
import mpmath as mp


def g_integral(ap, am, z, dps=40):
    """g(a+, a-; z) with G = exp(i g), from the defining y-integral at high precision."""
    with mp.workdps(dps):
        ap, am, z = mp.mpf(ap), mp.mpf(am), mp.mpc(z)

        def f(y):
            return (mp.sin(2 * y * z) / (2 * mp.sinh(ap * y) * mp.sinh(am * y)) - z / (ap * am * y)) / y

        pts = [0] + [mp.mpf(k) / 2 for k in range(1, 161)] + [mp.inf]
        return mp.quad(f, pts)


def asymptotic_residual(ap, am, x, dps=60):
    """|G(x) exp(i(chi + alpha x^2/4)) - 1| for real x > 0, all in high precision."""
    with mp.workdps(dps):
        ap, am, x = mp.mpf(ap), mp.mpf(am), mp.mpf(x)
        chi = mp.pi / 24 * (ap / am + am / ap)
        alpha = 2 * mp.pi / (ap * am)
        g = g_integral(ap, am, x, dps)
        return abs(mp.expj(g + chi + alpha * x * x / 4) - 1)
